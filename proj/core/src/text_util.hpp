#pragma once

// Small parsing helpers shared by the domain and config readers.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plauset::detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw std::invalid_argument(std::string(what) + ": not a number: '" + std::string(text) + "'");
    return value;
}

inline std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw std::invalid_argument(std::string(what) + ": not a nonnegative integer: '" + std::string(text) + "'");
    return value;
}

inline std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!piece.empty()) items.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return items;
}

inline std::vector<double> parse_doubles(std::string_view text, std::string_view what) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_double(item, what));
    return out;
}

}  // namespace plauset::detail
