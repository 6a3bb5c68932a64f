#include "rigidlab/core.hpp"

namespace rigidlab {

Similarity::Similarity(double scale, Matrix rot, Vector trans)
    : scale_(scale), rot_(std::move(rot)), trans_(std::move(trans)) {
  if (!(scale_ > 0)) throw ParameterError("similarity scale must be positive");
  if (rot_.rows() != rot_.cols() || rot_.rows() != trans_.size())
    throw ParameterError("similarity rotation/translation size mismatch");
  double defect =
      (rot_.transpose() * rot_ - Matrix::Identity(rot_.rows(), rot_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > kOrthoTol)
    throw ParameterError("similarity rotation not orthogonal (defect " +
                         std::to_string(defect) + ")");
}

}  // namespace rigidlab
