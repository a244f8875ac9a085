#pragma once

#include "tfnca/grid.hpp"
#include "tfnca/rules.hpp"

namespace tfnca {

// One synchronous update: out(i, j) is the XOR, over the basic rules making
// up `rule`, of the input cell at the basic's site offset, read under `bc`.
// Rule 0 maps everything to zeros; rule 1 is the identity.

// Per-cell reference evaluator. Deliberately the obvious nested loop; the
// word-parallel kernel is tested bit-for-bit against it.
BinaryGrid step_naive(const BinaryGrid& g, LinearRule rule, Boundary bc);

// Word-parallel evaluator: one row-gather plus in-row funnel shift per term,
// XOR-accumulated 64 cells at a time. Observationally identical to
// step_naive on every input.
BinaryGrid step_packed(const BinaryGrid& g, LinearRule rule, Boundary bc);

struct StepConfig {
    LinearRule rule;
    Boundary boundary = Boundary::Null;
    int iterations = 1;  // must be >= 1
};

// `iterations` applications of step_packed; throws UsageError when
// cfg.iterations < 1.
BinaryGrid run(const BinaryGrid& g, const StepConfig& cfg);

}  // namespace tfnca
