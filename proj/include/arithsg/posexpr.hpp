#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "arithsg/engine.hpp"

namespace arithsg {

// Grammar:   expr := term ("+" term)*
//            term := [count "*"] heap "@" ruleset
// Whitespace is ignored around "+", "*" and "@". Ruleset names may carry a
// parameter set, e.g. "sub{1,2}". The empty position formats as "0-sum".

namespace detail {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    heap_t number() {
        skip_ws();
        std::size_t start = pos;
        heap_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        if (pos == start) throw parse_error("expected a number", pos);
        return v;
    }
    std::string ruleset_name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
                ++pos;
            } else if (c == '{') {
                std::size_t close = text.find('}', pos);
                if (close == std::string_view::npos)
                    throw parse_error("unterminated '{' in ruleset name", pos);
                pos = close + 1;
            } else {
                break;
            }
        }
        if (pos == start) throw parse_error("expected a ruleset name", pos);
        return std::string(text.substr(start, pos - start));
    }
};

}  // namespace detail

// Parses a position expression; counts expand into repeated components.
// The empty-position marker "0-sum" parses back to the empty position.
inline Position parse_position(std::string_view text) {
    Position pos;
    detail::Cursor cur{text};
    if (cur.done()) return pos;
    cur.skip_ws();
    if (text.substr(cur.pos).rfind("0-sum", 0) == 0) {
        cur.pos += 5;
        if (!cur.done()) throw parse_error("unexpected text after 0-sum", cur.pos);
        return pos;
    }
    while (true) {
        std::size_t term_at = (cur.skip_ws(), cur.pos);
        heap_t first = cur.number();
        heap_t count = 1, heap = first;
        if (cur.peek() == '*') {
            ++cur.pos;
            count = first;
            heap = cur.number();
            if (count == 0) throw parse_error("count must be at least 1", term_at);
        }
        if (cur.peek() != '@') throw parse_error("expected '@' before ruleset name", cur.pos);
        ++cur.pos;
        std::size_t name_at = (cur.skip_ws(), cur.pos);
        std::string name = cur.ruleset_name();
        RulesetDescriptor rs = lookup(name);  // may throw lookup_error
        if (!rs.in_domain(heap))
            throw parse_error("heap " + std::to_string(heap) + " outside domain of " + rs.id,
                              name_at);
        for (heap_t i = 0; i < count; ++i) pos.components.push_back({rs.id, heap});
        if (cur.done()) break;
        if (cur.peek() != '+') throw parse_error("expected '+' between terms", cur.pos);
        ++cur.pos;
    }
    return pos;
}

// Canonical text: components grouped by ruleset name, heaps descending,
// repeats collapsed to count form. Round-trips through parse_position.
inline std::string format_position(const Position& pos) {
    if (pos.components.empty()) return "0-sum";
    std::map<std::string, std::map<heap_t, heap_t, std::greater<>>> grouped;
    for (const auto& c : pos.components) ++grouped[c.ruleset][c.heap];
    std::string out;
    for (const auto& [rs, heaps] : grouped) {
        for (const auto& [heap, count] : heaps) {
            if (!out.empty()) out += " + ";
            if (count > 1) out += std::to_string(count) + "*";
            out += std::to_string(heap) + "@" + rs;
        }
    }
    return out;
}

// Display form of a sum option: heaps descending, runs collapsed ("3*2+1").
// The empty sum renders as "0-sum".
inline std::string format_sum(const SumPosition& p) {
    if (p.heaps.empty()) return "0-sum";
    SumPosition c = p;
    c.canonicalize();
    std::string out;
    for (std::size_t i = 0; i < c.heaps.size();) {
        std::size_t j = i;
        while (j < c.heaps.size() && c.heaps[j] == c.heaps[i]) ++j;
        if (!out.empty()) out += "+";
        if (j - i > 1) out += std::to_string(j - i) + "*";
        out += std::to_string(c.heaps[i]);
        i = j;
    }
    return out;
}

}  // namespace arithsg
