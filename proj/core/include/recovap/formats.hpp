#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "recovap/exact_matching.hpp"
#include "recovap/gadgets.hpp"
#include "recovap/instance.hpp"
#include "recovap/treewidth.hpp"

namespace recovap {

// All text formats are line-oriented and 1-indexed; `c` lines are comments.
// Parsers reject malformed input with the offending line number.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance: `p recovap <n> <m> <k>` then `e <i> <j> <c1> <c2>`; costs are
// decimal integers or the literal `inf`.
Instance parse_instance(std::istream& in);
void serialize_instance(std::ostream& out, const Instance& inst);

// Solution: `s <cost>` then `m1 <i> <j>` / `m2 <i> <j>` lines.
SolutionPair parse_solution(std::istream& in, const Instance& inst);
void serialize_solution(std::ostream& out, const SolutionPair& pair);

// Exact matching: `p exact <nL> <nR> <m> <k>`, `e <i> <j> [cost]`,
// `r <i> <j>` red marks on existing edges.
ExactMatchingInstance parse_exact(std::istream& in);
void serialize_exact(std::ostream& out, const ExactMatchingInstance& g);

// Grid tiling: `p gt <ell> <n>` then one `c <i> <j> <a1> <b1> ...` line per
// cell (cells not listed are empty). This format has no comment lines.
GridTilingInstance parse_grid_tiling(std::istream& in);
void serialize_grid_tiling(std::ostream& out, const GridTilingInstance& gt);

// Tree decomposition: `td <width>`, `b <id> <v1> <v2> ...` bags with
// vertices named uK/vK, `t <id1> <id2>` tree edges.
TreeDecomposition parse_tree_decomposition(std::istream& in, const Instance& inst);
void serialize_tree_decomposition(std::ostream& out, const TreeDecomposition& td, int n);

// Convenience file wrappers; throw ParseError with the path on failure.
Instance load_instance(const std::string& path);
ExactMatchingInstance load_exact(const std::string& path);
GridTilingInstance load_grid_tiling(const std::string& path);

}  // namespace recovap
