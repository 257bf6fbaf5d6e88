#pragma once

#include <iosfwd>
#include <memory>

#include "mercerlab/matrix.hpp"
#include "mercerlab/quadrature.hpp"

namespace mercerlab {

/// A kernel known only through its samples K(x_i, x_j) on a quadrature rule.
///
/// At node pairs the stored sample is returned exactly. Elsewhere the value is
/// bilinear in the node lattice, held constant beyond the first and last node.
class TabulatedKernel {
 public:
  TabulatedKernel(QuadratureRule rule, Matrix samples);

  [[nodiscard]] const QuadratureRule& rule() const noexcept { return data_->rule; }
  [[nodiscard]] const Matrix& samples() const noexcept { return data_->samples; }
  /// max|A - A^T| <= 1e-12 * max|A|.
  [[nodiscard]] bool symmetric() const noexcept { return data_->symmetric; }

  [[nodiscard]] double eval(double x, double y) const;

 private:
  struct Data {
    QuadratureRule rule;
    Matrix samples;
    bool symmetric;
  };
  std::shared_ptr<const Data> data_;
};

/// CSV layout: first row nodes, second row weights, then one row per matrix
/// row. Values are written with 17 significant digits.
void write_tabulated_csv(std::ostream& os, const QuadratureRule& rule, const Matrix& samples);

/// Parses the layout above. The interval is not stored in the file; it is
/// centred on the node span with length equal to the weight sum. Rejects
/// ragged or non-square data and NaN/inf entries.
TabulatedKernel read_tabulated_csv(std::istream& is);

}  // namespace mercerlab
