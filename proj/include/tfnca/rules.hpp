#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tfnca/errors.hpp"

namespace tfnca {

// The update neighborhood is the 5x5 block centered on the cell: 25 sites,
// one basic rule per site. A basic rule is the power of two assigned to its
// site by the numbering convention below; a linear rule is the XOR of a set
// of basic rules and is therefore identified with an integer in [0, 2^25).
inline constexpr int kBasicCount = 25;
inline constexpr std::uint32_t kRuleCount = 1u << kBasicCount;  // 33554432
inline constexpr std::uint32_t kMaxRule = kRuleCount - 1;       // 33554431

// Relative site read by a basic rule: di is rows down, dj is columns right,
// both in [-2, 2].
struct Offset {
    int di = 0;
    int dj = 0;
    bool operator==(const Offset&) const = default;
};

// Numbering convention, rows di = -2..+2 top to bottom, columns dj = -2..+2
// left to right. Rule 1 is the cell itself, rule 32 its left neighbor:
//
//   1048576 2097152 4194304 8388608 16777216
//    524288      64     128     256      512
//    262144      32       1       2     1024
//    131072      16       8       4     2048
//     65536   32768   16384    8192     4096
inline constexpr std::uint32_t kBasicBySite[5][5] = {
    {1048576, 2097152, 4194304, 8388608, 16777216},
    {524288, 64, 128, 256, 512},
    {262144, 32, 1, 2, 1024},
    {131072, 16, 8, 4, 2048},
    {65536, 32768, 16384, 8192, 4096},
};

// Validated rule number; construction rejects values >= 2^25.
class LinearRule {
public:
    LinearRule() = default;
    explicit LinearRule(std::uint32_t number);

    std::uint32_t number() const { return number_; }

    // Number of basic rules XOR-ed together (popcount of the rule number).
    int term_count() const;

    bool operator==(const LinearRule&) const = default;

private:
    std::uint32_t number_ = 0;
};

// Site read by a basic rule; throws InvalidBasicError unless `basic` is a
// power of two below 2^25.
Offset offset_of_basic(std::uint32_t basic);

// Inverse of offset_of_basic; throws InvalidBasicError unless both
// components are in [-2, 2].
std::uint32_t basic_at(Offset site);

// The basic rules making up `rule`, ascending.
std::vector<std::uint32_t> decompose(LinearRule rule);

// XOR of a set of basic rules; duplicates or non-basic members throw
// InvalidBasicError. The empty set composes to rule 0.
LinearRule compose(const std::vector<std::uint32_t>& basics);

// Accepts a decimal rule number ("262176") or a '+'-separated sum of
// distinct basic rules ("262144+32"). Surrounding whitespace is ignored.
// Throws RuleParseError on malformed text, RuleRangeError on values >= 2^25,
// InvalidBasicError on bad sum terms.
LinearRule parse_rule(const std::string& text);

// Standard neighborhoods as masks over the 25 basic rules: the 5-site von
// Neumann cross, the 9-site Moore block, and the full 25-site block.
enum class Neighborhood { VonNeumann, Moore, ExtendedMoore };

std::uint32_t neighborhood_mask(Neighborhood n);

// True when every term of `rule` reads a site inside `n`.
bool conforms_to(LinearRule rule, Neighborhood n);

// The six published two-term edge-detection rules, ascending.
inline constexpr std::array<std::uint32_t, 6> kPublishedRules = {
    1025, 1040, 1088, 131073, 262145, 262176};

}  // namespace tfnca
