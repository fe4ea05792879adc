#pragma once

// Line discipline shared by the text readers: '#' comment lines, blank lines
// skipped, surrounding whitespace trimmed, byte offsets preserved for errors.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace epi::detail {

struct LineScanner {
    std::string_view text;
    std::size_t pos = 0;

    std::optional<std::pair<std::string_view, std::size_t>> next() {
        while (pos < text.size()) {
            std::size_t start = pos;
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            pos = end + (end < text.size() ? 1 : 0);
            std::string_view line = text.substr(start, end - start);
            std::size_t b = line.find_first_not_of(" \t\r");
            if (b == std::string_view::npos) continue;
            std::size_t e = line.find_last_not_of(" \t\r");
            line = line.substr(b, e - b + 1);
            if (line.empty() || line[0] == '#') continue;
            return std::make_pair(line, start + b);
        }
        return std::nullopt;
    }
};

inline bool parse_nat(std::string_view s, std::uint64_t& out) {
    if (s.empty()) return false;
    out = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        out = out * 10 + static_cast<std::uint64_t>(c - '0');
        if (out > 100000000ULL) return false;
    }
    return true;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace epi::detail
