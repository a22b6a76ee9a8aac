#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "arithsg/engine.hpp"

namespace arithsg {

enum class ExportFormat { csv, bfile, json_lines };

// Byte-stable sequence dump. csv carries an "n,sg" header; the b-file
// format is the OEIS-style "n value" per line; json_lines emits one object
// per line.
inline void export_sequence(const SGTable& t, ExportFormat fmt, std::ostream& os) {
    if (fmt == ExportFormat::csv) os << "n,sg\n";
    for (heap_t n = t.domain_min; n <= t.limit; ++n) {
        switch (fmt) {
            case ExportFormat::csv: os << n << ',' << t.values[n] << '\n'; break;
            case ExportFormat::bfile: os << n << ' ' << t.values[n] << '\n'; break;
            case ExportFormat::json_lines:
                os << "{\"n\":" << n << ",\"sg\":" << t.values[n] << "}\n";
                break;
        }
    }
}

struct Occurrence {
    std::uint64_t count = 0;
    heap_t first = 0;
    heap_t last = 0;
};

// Everything derived from one table: which values occur where, the maximum,
// and the exact ratio series value/n.
struct SequenceReport {
    std::string ruleset;
    heap_t domain_min = 0;
    heap_t limit = 0;
    std::vector<nim_t> values;
    std::map<nim_t, Occurrence> occurrences;
    nim_t max_value = 0;
    heap_t argmax = 0;
};

inline SequenceReport occurrence_report(const SGTable& t) {
    SequenceReport r;
    r.ruleset = t.ruleset;
    r.domain_min = t.domain_min;
    r.limit = t.limit;
    r.values.assign(t.values.begin() + static_cast<std::ptrdiff_t>(t.domain_min), t.values.end());
    bool any = false;
    for (heap_t n = t.domain_min; n <= t.limit; ++n) {
        nim_t v = t.values[n];
        auto& occ = r.occurrences[v];
        if (occ.count == 0) occ.first = n;
        occ.last = n;
        ++occ.count;
        if (!any || v > r.max_value) {
            r.max_value = v;
            r.argmax = n;
            any = true;
        }
    }
    return r;
}

// Exact rational value/n; equality tests never touch floating point.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Ratio of(std::uint64_t num, std::uint64_t den) {
        std::uint64_t g = std::gcd(num, den);
        if (g == 0) return {0, 1};
        return {num / g, den / g};
    }
    bool operator==(const Ratio&) const = default;
    // cross-multiplication fits in 64 bits: num < 2^31, den <= table limit
    bool operator<(const Ratio& o) const { return num * o.den < o.num * den; }
    std::string str() const {
        return num == 0 ? "0" : std::to_string(num) + "/" + std::to_string(den);
    }
};

struct RatioPoint {
    heap_t n = 0;
    Ratio ratio;
};

// Ratio series with a dyadic-window trend summary: the largest ratio inside
// each window [2^k, 2^(k+1)) tracks whether value/n is dying out.
struct RatioReport {
    std::vector<RatioPoint> points;
    Ratio max;
    heap_t argmax = 0;
    std::vector<std::pair<heap_t, Ratio>> window_max;  // (window start, max ratio)
};

inline RatioReport ratio_report(const SGTable& t) {
    RatioReport r;
    heap_t start = std::max<heap_t>(t.domain_min, 1);
    for (heap_t n = start; n <= t.limit; ++n) {
        Ratio q = Ratio::of(t.values[n], n);
        r.points.push_back({n, q});
        if (r.argmax == 0 || r.max < q) {
            r.max = q;
            r.argmax = n;
        }
    }
    for (heap_t w = 1; w <= t.limit; w *= 2) {
        Ratio best;
        bool any = false;
        for (heap_t n = std::max(w, start); n <= std::min(t.limit, 2 * w - 1); ++n) {
            Ratio q = Ratio::of(t.values[n], n);
            if (!any || best < q) {
                best = q;
                any = true;
            }
        }
        if (any) r.window_max.emplace_back(w, best);
    }
    return r;
}

// Minimal SVG 1.1 scatter of (n, value): deterministic byte output, integer
// pixel coordinates, one small square per table entry.
inline void scatter_svg(const SGTable& t, std::ostream& os) {
    const long width = 900, height = 540;
    const long ml = 70, mr = 20, mt = 40, mb = 50;
    const long pw = width - ml - mr, ph = height - mt - mb;
    heap_t n0 = t.domain_min, n1 = std::max(t.limit, n0 + 1);
    nim_t vmax = 1;
    for (heap_t n = t.domain_min; n <= t.limit; ++n) vmax = std::max(vmax, t.values[n]);

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
       << "<text x=\"" << width / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\""
       << " text-anchor=\"middle\">" << t.ruleset << ": nim-values to " << t.limit
       << "</text>\n"
       << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
       << mt + ph << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << ml << "\" y=\"" << mt + ph + 30
       << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << n0
       << "</text>\n"
       << "<text x=\"" << ml + pw << "\" y=\"" << mt + ph + 30
       << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << n1
       << "</text>\n"
       << "<text x=\"" << ml - 8 << "\" y=\"" << mt + ph
       << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">0</text>\n"
       << "<text x=\"" << ml - 8 << "\" y=\"" << mt + 10
       << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << vmax
       << "</text>\n"
       << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">heap size"
       << "</text>\n";
    for (heap_t n = t.domain_min; n <= t.limit; ++n) {
        long x = ml + static_cast<long>((n - n0) * static_cast<heap_t>(pw) / (n1 - n0));
        long y = mt + ph - static_cast<long>(std::uint64_t(t.values[n]) * ph / vmax);
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"2\" height=\"2\"/>\n";
    }
    os << "</svg>\n";
}

inline void scatter_svg(const SGTable& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw capacity_error("cannot open " + path + " for writing");
    scatter_svg(t, f);
}

// Display-level reduction of a sum option: heaps cancel in equal pairs, and
// terminal heaps of size one drop out. When everything cancels away from an
// option that had a real move in it, a single heap of one stays behind as
// the terminal-equivalent marker.
inline SumPosition reduce_display(const FactorSieve& sieve, const RulesetDescriptor& rs,
                                  const SumPosition& pos) {
    if (!is_terminal(sieve, rs, 1))
        throw usage_error("reduce_display requires heap 1 terminal in " + rs.id);
    std::map<heap_t, std::uint64_t> counts;
    for (heap_t h : pos.heaps) ++counts[h];
    SumPosition odd;
    for (auto [h, c] : counts)
        if (c % 2 == 1) odd.heaps.push_back(h);
    bool had_move = false;
    for (heap_t h : pos.heaps)
        if (!is_terminal(sieve, rs, h)) {
            had_move = true;
            break;
        }
    SumPosition out;
    for (heap_t h : odd.heaps)
        if (h != 1) out.heaps.push_back(h);
    bool dropped_one = out.heaps.size() != odd.heaps.size();
    if (out.heaps.empty() && dropped_one && had_move) out.heaps.push_back(1);
    out.canonicalize();
    return out;
}

// Table rendering of a reduced option: full cancellation displays as the
// terminal-equivalent "1".
inline std::string format_reduced(const SumPosition& reduced) {
    if (reduced.heaps.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < reduced.heaps.size(); ++i)
        out += (i ? "+" : "") + std::to_string(reduced.heaps[i]);
    return out;
}

}  // namespace arithsg
