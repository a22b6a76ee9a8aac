// Command-line front end: nim-value queries, sequence dumps, disjunctive-sum
// solving, theorem verification, exports, figures and interactive play.
//
// Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 resource
// limits.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arithsg/analysis.hpp"
#include "arithsg/posexpr.hpp"
#include "arithsg/theorems.hpp"

using namespace arithsg;

namespace {

constexpr heap_t default_sieve_limit = 200000;

struct Options {
    double max_memory_mb = 2048.0;

    heap_t budget_entries() const {
        return static_cast<heap_t>(max_memory_mb * 1024.0 * 1024.0 / 8.0);
    }
    FactorSieve sieve_for(heap_t needed) const {
        heap_t limit = std::max<heap_t>(default_sieve_limit, needed);
        return FactorSieve(limit, budget_entries());
    }
};

bool real_ruleset(const RulesetDescriptor& d) { return d.base || d.splits; }

bool is_powerset(const RulesetDescriptor& d) {
    return d.semantics == OptionSemantics::powerset_move_to ||
           d.semantics == OptionSemantics::powerset_subtract;
}

const char* coverage_name(Coverage c) {
    switch (c) {
        case Coverage::full: return "full";
        case Coverage::partial: return "partial";
        case Coverage::none: return "none";
    }
    return "?";
}

std::string describe_position(const Position& pos, const TableMap& tables) {
    std::uint64_t v = sum_value(pos, tables);
    std::ostringstream os;
    os << format_position(pos) << "  (value " << v << ", "
       << (v == 0 ? "P-position" : "N-position") << ")";
    return os.str();
}

TableMap tables_for_position(const FactorSieve& sieve, const Position& pos) {
    TableMap tables;
    for (const auto& c : pos.components) {
        heap_t need = c.heap;
        auto it = tables.find(c.ruleset);
        if (it != tables.end() && it->second.limit >= need) continue;
        auto rs = lookup(c.ruleset);
        tables.insert_or_assign(c.ruleset,
                                make_table(sieve, rs, std::max(need, rs.domain_min)));
    }
    return tables;
}

int cmd_sg(const Options& opt, const std::string& ruleset, heap_t n) {
    auto rs = lookup(ruleset);
    rs.require_domain(n);
    auto sieve = opt.sieve_for(n);
    auto table = make_table(sieve, rs, n);
    const char* source =
        table.provenance[n] == SGTable::Source::closed_form ? "closed-form" : "engine";
    std::cout << "SG(" << n << "@" << rs.id << ") = " << table.at(n) << "  [" << source
              << "]\n";
    if (is_powerset(rs)) {
        auto allowed = allowed_set(sieve, rs, n);
        if (allowed.empty()) {
            std::cout << "terminal position (empty allowed set)\n";
            return 0;
        }
        std::cout << "allowed heaps (options are nonempty subsets, values XOR):\n";
        auto inner = make_table(sieve, rs, n);
        for (heap_t h : allowed)
            std::cout << "  " << h << " -> " << inner.at(h) << "\n";
        return 0;
    }
    auto opts = options(sieve, rs, n);
    if (opts.empty()) {
        std::cout << "terminal position (no options)\n";
        return 0;
    }
    std::cout << "options:\n";
    for (const auto& o : opts) {
        std::uint64_t x = 0;
        for (heap_t h : o.heaps) x ^= table.at(h);
        std::cout << "  " << format_sum(o) << " -> " << x << "\n";
    }
    return 0;
}

int cmd_seq(const Options& opt, const std::string& ruleset, heap_t to, bool closed_form) {
    auto rs = lookup(ruleset);
    auto sieve = opt.sieve_for(to);
    if (closed_form) {
        if (coverage(rs.id) != Coverage::full)
            throw usage_error("no full closed form for " + rs.id);
        Formulas f(sieve);
        for (heap_t n = rs.domain_min; n <= to; ++n)
            std::cout << n << " " << f.value(rs, n)->str() << "\n";
        return 0;
    }
    auto table = sg_table(sieve, rs, to);
    export_sequence(table, ExportFormat::bfile, std::cout);
    return 0;
}

int cmd_solve(const Options& opt, const std::string& expr) {
    Position pos = parse_position(expr);
    heap_t max_heap = 2;
    for (const auto& c : pos.components) max_heap = std::max(max_heap, c.heap);
    auto sieve = opt.sieve_for(max_heap);
    auto tables = tables_for_position(sieve, pos);
    std::cout << describe_position(pos, tables) << "\n";
    if (pos.components.empty()) return 0;
    auto moves = winning_moves(sieve, pos, tables);
    if (moves.empty()) {
        std::cout << "no winning moves\n";
        return 0;
    }
    std::cout << "winning moves (" << moves.size() << "):\n";
    for (const auto& m : moves) {
        const auto& c = pos.components[m.component];
        std::cout << "  component " << m.component + 1 << " (" << c.heap << "@" << c.ruleset
                  << "): move to " << format_sum(m.to) << "\n";
    }
    return 0;
}

int verify_one(const FactorSieve& sieve, const RulesetDescriptor& rs, heap_t to) {
    heap_t cap = to;
    if (is_powerset(rs) && cap > 60) {
        cap = 60;
        std::cout << "note: " << rs.id << " table capped at 60 (32-bit nim-values)\n";
    }
    std::cout << "verify " << rs.id << " to " << cap << "\n";
    auto table = sg_table(sieve, rs, cap);
    int rc = 0;
    if (coverage(rs.id) == Coverage::full) {
        Formulas f(sieve);
        bool ok = true;
        for (heap_t n = rs.domain_min; n <= cap; ++n) {
            auto v = f.value(rs, n);
            if (!v->equals(table.at(n))) {
                std::cout << "closed form: MISMATCH at n=" << n << ": engine=" << table.at(n)
                          << ", formula=" << v->str() << "\n";
                ok = false;
                rc = 1;
                break;
            }
        }
        if (ok)
            std::cout << "closed form: OK (" << (cap - rs.domain_min + 1) << " heaps)\n";
    }
    auto claims = partial_claims(rs.id);
    if (claims.empty() && coverage(rs.id) != Coverage::full) {
        std::cout << "no closed form or claims for this ruleset; engine values only\n";
        return rc;
    }
    for (const auto& c : claims) {
        auto r = c.check(sieve, table);
        std::cout << "claim " << c.name << (c.hard ? "" : " [report-only]") << ": "
                  << (r.pass ? "PASS" : "FAIL");
        if (!r.pass && r.counterexample)
            std::cout << " at n=" << *r.counterexample << " (" << r.detail << ")";
        std::cout << "\n";
        if (!r.pass && c.hard) rc = 1;
    }
    return rc;
}

int cmd_verify(const Options& opt, const std::string& ruleset, heap_t to, bool all) {
    auto sieve = opt.sieve_for(to);
    if (!all) return verify_one(sieve, lookup(ruleset), to);
    int rc = 0;
    for (const auto& rs : registry()) {
        if (!real_ruleset(rs)) continue;
        rc = std::max(rc, verify_one(sieve, rs, to));
        std::cout << "\n";
    }
    return rc;
}

int cmd_export(const Options& opt, const std::string& ruleset, heap_t to,
               const std::string& format, const std::string& out) {
    auto rs = lookup(ruleset);
    auto sieve = opt.sieve_for(to);
    auto table = sg_table(sieve, rs, to);
    ExportFormat fmt;
    if (format == "csv")
        fmt = ExportFormat::csv;
    else if (format == "bfile")
        fmt = ExportFormat::bfile;
    else if (format == "jsonl")
        fmt = ExportFormat::json_lines;
    else
        throw usage_error("unknown export format '" + format + "' (csv, bfile, jsonl)");
    if (out.empty()) {
        export_sequence(table, fmt, std::cout);
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw capacity_error("cannot open " + out);
        export_sequence(table, fmt, f);
    }
    return 0;
}

int cmd_plot(const Options& opt, const std::string& ruleset, heap_t to,
             const std::string& out) {
    auto rs = lookup(ruleset);
    auto sieve = opt.sieve_for(to);
    auto table = sg_table(sieve, rs, to);
    scatter_svg(table, out);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_list(const Options&) {
    std::cout << "ruleset                 semantics           domain  solution  description\n";
    for (const auto& rs : registry()) {
        std::string dom = ">=" + std::to_string(rs.domain_min);
        if (!real_ruleset(rs)) dom = ">=1";
        std::printf("%-23s %-19s %-7s %-9s %s\n", rs.id.c_str(),
                    semantics_name(rs.semantics), dom.c_str(),
                    coverage_name(coverage(rs.id)), rs.summary.c_str());
    }
    return 0;
}

std::optional<Move> read_human_move(const Position& pos, const FactorSieve& sieve) {
    std::cout << "your move (component# heaps, e.g. \"1 3+3+1\"; q quits): " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) return std::nullopt;
    std::istringstream is(line);
    std::string first;
    is >> first;
    if (first == "q" || first == "quit") return std::nullopt;
    std::size_t idx = 0;
    try {
        idx = std::stoul(first);
    } catch (...) {
        std::cout << "could not read a component index\n";
        return read_human_move(pos, sieve);
    }
    if (idx < 1 || idx > pos.components.size()) {
        std::cout << "component index out of range\n";
        return read_human_move(pos, sieve);
    }
    std::string rest;
    std::getline(is, rest);
    SumPosition to;
    std::size_t p = 0;
    while (p < rest.size()) {
        while (p < rest.size() && (rest[p] == ' ' || rest[p] == '+')) ++p;
        if (p >= rest.size()) break;
        if (!std::isdigit(static_cast<unsigned char>(rest[p]))) {
            std::cout << "could not read the replacement heaps\n";
            return read_human_move(pos, sieve);
        }
        heap_t h = 0;
        while (p < rest.size() && std::isdigit(static_cast<unsigned char>(rest[p])))
            h = h * 10 + (rest[p++] - '0');
        to.heaps.push_back(h);
    }
    to.canonicalize();
    const auto& comp = pos.components[idx - 1];
    auto rs = lookup(comp.ruleset);
    auto legal = options(sieve, rs, comp.heap);
    if (std::find(legal.begin(), legal.end(), to) == legal.end()) {
        std::cout << "not a legal option of " << comp.heap << "@" << comp.ruleset << "\n";
        return read_human_move(pos, sieve);
    }
    return Move{idx - 1, to};
}

void apply_move(Position& pos, const Move& m) {
    std::string rs = pos.components[m.component].ruleset;
    pos.components.erase(pos.components.begin() + static_cast<std::ptrdiff_t>(m.component));
    for (heap_t h : m.to.heaps) pos.components.push_back({rs, h});
}

bool position_terminal(const FactorSieve& sieve, const Position& pos) {
    for (const auto& c : pos.components)
        if (!is_terminal(sieve, lookup(c.ruleset), c.heap)) return false;
    return true;
}

int cmd_play(const Options& opt, const std::string& expr, bool engine_first) {
    Position pos = parse_position(expr);
    heap_t max_heap = 2;
    for (const auto& c : pos.components) max_heap = std::max(max_heap, c.heap);
    auto sieve = opt.sieve_for(max_heap);
    auto tables = tables_for_position(sieve, pos);
    bool engines_turn = engine_first;
    while (true) {
        std::cout << "position: " << describe_position(pos, tables) << "\n";
        if (position_terminal(sieve, pos)) {
            // normal play: whoever cannot move loses
            std::cout << (engines_turn ? "engine cannot move - you win\n"
                                       : "you cannot move - engine wins\n");
            return 0;
        }
        if (engines_turn) {
            auto win = winning_moves(sieve, pos, tables, /*first_only=*/true);
            Move m;
            if (!win.empty()) {
                m = win.front();
            } else {
                // losing anyway: first canonical move of the first live component
                for (std::size_t j = 0; j < pos.components.size(); ++j) {
                    const auto& c = pos.components[j];
                    auto opts = options(sieve, lookup(c.ruleset), c.heap);
                    if (!opts.empty()) {
                        m = Move{j, opts.front()};
                        break;
                    }
                }
            }
            const auto& c = pos.components[m.component];
            std::cout << "engine moves component " << m.component + 1 << " (" << c.heap << "@"
                      << c.ruleset << ") to " << format_sum(m.to) << "\n";
            apply_move(pos, m);
        } else {
            auto m = read_human_move(pos, sieve);
            if (!m) {
                std::cout << "game abandoned\n";
                return 0;
            }
            apply_move(pos, *m);
        }
        engines_turn = !engines_turn;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sprague-Grundy engine for impartial games on arithmetic functions"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--max-memory", opt.max_memory_mb, "sieve memory budget in MiB")
        ->capture_default_str();

    std::string ruleset, expr, format = "bfile", out;
    heap_t n = 0, to = 100;
    bool closed_form = false, all = false, engine_first = false;

    auto* sg_cmd = app.add_subcommand("sg", "nim-value and options of one heap");
    sg_cmd->add_option("ruleset", ruleset)->required();
    sg_cmd->add_option("n", n)->required();

    auto* seq_cmd = app.add_subcommand("seq", "print the nim-value sequence");
    seq_cmd->add_option("ruleset", ruleset)->required();
    seq_cmd->add_option("--to", to, "largest heap")->required();
    seq_cmd->add_flag("--closed-form", closed_form, "use the closed form");

    auto* solve_cmd = app.add_subcommand("solve", "value and winning moves of a sum");
    solve_cmd->add_option("position", expr, "e.g. \"7@totient + 7@totative\"")->required();

    auto* verify_cmd = app.add_subcommand("verify", "engine vs closed forms and claims");
    verify_cmd->add_option("ruleset", ruleset);
    verify_cmd->add_option("--to", to, "largest heap")->required();
    verify_cmd->add_flag("--all", all, "verify every ruleset");

    auto* export_cmd = app.add_subcommand("export", "dump a sequence to a file");
    export_cmd->add_option("ruleset", ruleset)->required();
    export_cmd->add_option("--to", to)->required();
    export_cmd->add_option("--format", format, "csv, bfile or jsonl")
        ->capture_default_str();
    export_cmd->add_option("-o,--output", out, "output path (default stdout)");

    auto* plot_cmd = app.add_subcommand("plot", "scatter plot of nim-values as SVG");
    plot_cmd->add_option("ruleset", ruleset)->required();
    plot_cmd->add_option("--to", to)->required();
    plot_cmd->add_option("-o,--output", out)->required();

    auto* play_cmd = app.add_subcommand("play", "play a sum against the engine");
    play_cmd->add_option("position", expr)->required();
    play_cmd->add_flag("--engine-first", engine_first, "engine moves first");

    app.add_subcommand("list", "show all rulesets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sg_cmd->parsed()) return cmd_sg(opt, ruleset, n);
        if (seq_cmd->parsed()) return cmd_seq(opt, ruleset, to, closed_form);
        if (solve_cmd->parsed()) return cmd_solve(opt, expr);
        if (verify_cmd->parsed()) {
            if (!all && ruleset.empty())
                throw usage_error("verify needs a ruleset name or --all");
            return cmd_verify(opt, ruleset, to, all);
        }
        if (export_cmd->parsed()) return cmd_export(opt, ruleset, to, format, out);
        if (plot_cmd->parsed()) return cmd_plot(opt, ruleset, to, out);
        if (play_cmd->parsed()) return cmd_play(opt, expr, engine_first);
        return cmd_list(opt);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lookup_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const oracle_refusal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const partial_table_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
