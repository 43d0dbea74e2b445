#include "ghostlab/block_operator.hpp"

namespace ghostlab {

void BlockOperator::validate() const {
  const std::size_t n = levels();
  if (blocks.size() != n || rep_dims.size() != n ||
      level_labels.size() != n) {
    fail(ErrorCode::InvalidArgument, "block operator shape tables disagree");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (blocks[i].size() != n) {
      fail(ErrorCode::InvalidArgument, "ragged block table");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto& m = blocks[i][j];
      if (m.size() == 0) continue;
      if (m.rows() != block_dim(i, j) || m.cols() != block_dim(i, j)) {
        fail(ErrorCode::InvalidArgument,
             "block (" + std::to_string(i) + ", " + std::to_string(j) +
                 ") has the wrong shape");
      }
    }
  }
}

BlockOperator BlockOperator::zero_like(const BlockOperator& shape) {
  BlockOperator out;
  out.group_sizes = shape.group_sizes;
  out.rep_dims = shape.rep_dims;
  out.level_labels = shape.level_labels;
  out.blocks.assign(shape.levels(), std::vector<Eigen::MatrixXcd>(shape.levels()));
  return out;
}

}  // namespace ghostlab
