#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ghostlab/errors.hpp"

namespace ghostlab {

/// An operator on the finite window Hilbert space ⊕_N ℓ²(G_N) ⊗ H_M,
/// stored blockwise: blocks[i][j] acts on ℓ²(G_i) ⊗ H_j. Every operator
/// the pipeline produces is diagonal in this decomposition (the pair (N,M)
/// labels both row and column), so one matrix per (i, j) suffices. An
/// empty matrix denotes a zero block.
struct BlockOperator {
  std::vector<std::vector<Eigen::MatrixXcd>> blocks;
  std::vector<Eigen::Index> group_sizes;  // |G_i| per level
  std::vector<Eigen::Index> rep_dims;     // dim H_j per level
  std::vector<std::string> level_labels;

  std::size_t levels() const { return group_sizes.size(); }

  Eigen::Index block_dim(std::size_t i, std::size_t j) const {
    return group_sizes[i] * rep_dims[j];
  }

  const Eigen::MatrixXcd& block(std::size_t i, std::size_t j) const {
    return blocks[i][j];
  }

  bool is_zero_block(std::size_t i, std::size_t j) const {
    return blocks[i][j].size() == 0;
  }

  /// Shape check: every nonempty block must be square of the declared size.
  void validate() const;

  static BlockOperator zero_like(const BlockOperator& shape);
};

}  // namespace ghostlab
