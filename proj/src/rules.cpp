#include "tfnca/rules.hpp"

#include <bit>
#include <cctype>
#include <charconv>

namespace tfnca {

namespace {

// offset_of_basic is hot in the per-cell stepper, so invert the site table
// once into a bit-position -> offset lookup.
constexpr std::array<Offset, kBasicCount> build_offset_by_bit() {
    std::array<Offset, kBasicCount> table{};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) {
            const int bit = std::countr_zero(kBasicBySite[r][c]);
            table[bit] = Offset{r - 2, c - 2};
        }
    return table;
}

constexpr auto kOffsetByBit = build_offset_by_bit();

bool is_basic(std::uint32_t v) {
    return v != 0 && v <= kMaxRule && std::has_single_bit(v);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

// Strict decimal parse of a whole token; no sign, no leftovers.
bool parse_u64(std::string_view token, std::uint64_t& out) {
    if (token.empty())
        return false;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

LinearRule::LinearRule(std::uint32_t number) : number_(number) {
    if (number > kMaxRule)
        throw RuleRangeError("rule " + std::to_string(number) +
                             " out of range [0, " + std::to_string(kMaxRule) + "]");
}

int LinearRule::term_count() const {
    return std::popcount(number_);
}

Offset offset_of_basic(std::uint32_t basic) {
    if (!is_basic(basic))
        throw InvalidBasicError(std::to_string(basic) +
                                " is not a basic rule (power of two below 2^25)");
    return kOffsetByBit[std::countr_zero(basic)];
}

std::uint32_t basic_at(Offset site) {
    if (site.di < -2 || site.di > 2 || site.dj < -2 || site.dj > 2)
        throw InvalidBasicError("site (" + std::to_string(site.di) + ", " +
                                std::to_string(site.dj) +
                                ") outside the 5x5 neighborhood");
    return kBasicBySite[site.di + 2][site.dj + 2];
}

std::vector<std::uint32_t> decompose(LinearRule rule) {
    std::vector<std::uint32_t> basics;
    std::uint32_t n = rule.number();
    basics.reserve(static_cast<std::size_t>(std::popcount(n)));
    while (n != 0) {
        const std::uint32_t low = n & (~n + 1);  // lowest set bit
        basics.push_back(low);
        n ^= low;
    }
    return basics;
}

LinearRule compose(const std::vector<std::uint32_t>& basics) {
    std::uint32_t n = 0;
    for (std::uint32_t b : basics) {
        if (!is_basic(b))
            throw InvalidBasicError(std::to_string(b) +
                                    " is not a basic rule (power of two below 2^25)");
        if (n & b)
            throw InvalidBasicError("basic rule " + std::to_string(b) +
                                    " listed twice");
        n |= b;
    }
    return LinearRule(n);
}

LinearRule parse_rule(const std::string& text) {
    const std::string_view body = trim(text);
    if (body.empty())
        throw RuleParseError("empty rule text");

    if (body.find('+') != std::string_view::npos) {
        std::vector<std::uint32_t> basics;
        std::size_t start = 0;
        while (true) {
            const std::size_t plus = body.find('+', start);
            const std::string_view token =
                trim(body.substr(start, plus == std::string_view::npos
                                            ? std::string_view::npos
                                            : plus - start));
            std::uint64_t value = 0;
            if (!parse_u64(token, value))
                throw RuleParseError("bad rule term '" + std::string(token) +
                                     "' in '" + std::string(body) + "'");
            if (value > kMaxRule || !std::has_single_bit(value))
                throw InvalidBasicError(std::to_string(value) +
                                        " is not a basic rule (power of two below 2^25)");
            basics.push_back(static_cast<std::uint32_t>(value));
            if (plus == std::string_view::npos)
                break;
            start = plus + 1;
        }
        return compose(basics);
    }

    std::uint64_t value = 0;
    if (!parse_u64(body, value))
        throw RuleParseError("bad rule '" + std::string(body) + "'");
    if (value > kMaxRule)
        throw RuleRangeError("rule " + std::to_string(value) + " out of range [0, " +
                             std::to_string(kMaxRule) + "]");
    return LinearRule(static_cast<std::uint32_t>(value));
}

std::uint32_t neighborhood_mask(Neighborhood n) {
    auto block = [](int radius) {
        std::uint32_t mask = 0;
        for (int di = -radius; di <= radius; ++di)
            for (int dj = -radius; dj <= radius; ++dj)
                mask |= kBasicBySite[di + 2][dj + 2];
        return mask;
    };
    switch (n) {
        case Neighborhood::VonNeumann: {
            std::uint32_t mask = 0;
            for (const Offset site :
                 {Offset{0, 0}, Offset{-1, 0}, Offset{1, 0}, Offset{0, -1}, Offset{0, 1}})
                mask |= kBasicBySite[site.di + 2][site.dj + 2];
            return mask;
        }
        case Neighborhood::Moore:
            return block(1);
        case Neighborhood::ExtendedMoore:
            return block(2);
    }
    throw UsageError("unknown neighborhood");
}

bool conforms_to(LinearRule rule, Neighborhood n) {
    return (rule.number() & ~neighborhood_mask(n)) == 0;
}

}  // namespace tfnca
