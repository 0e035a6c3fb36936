#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

namespace socpmw {

using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Sizes of a Cartesian product of second-order cones, with offsets into the
// concatenated coordinate space.
class ConePartition {
 public:
  ConePartition() = default;
  explicit ConePartition(std::vector<int> sizes);

  int r() const { return static_cast<int>(sizes_.size()); }
  int n() const { return n_; }
  int size(int k) const { return sizes_[k]; }
  int offset(int k) const { return offsets_[k]; }
  const std::vector<int>& sizes() const { return sizes_; }

  bool operator==(const ConePartition& o) const { return sizes_ == o.sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int n_ = 0;
};

// A dense length-n vector viewed per cone: scalar part v0 plus vector part.
struct MulticoneVector {
  ConePartition part;
  Eigen::VectorXd values;

  MulticoneVector() = default;
  MulticoneVector(ConePartition p, Eigen::VectorXd v);
  static MulticoneVector zero(const ConePartition& p);

  Eigen::VectorBlock<const Eigen::VectorXd> cone(int k) const {
    return values.segment(part.offset(k), part.size(k));
  }
  Eigen::VectorBlock<Eigen::VectorXd> cone(int k) {
    return values.segment(part.offset(k), part.size(k));
  }
  double scalar(int k) const { return values[part.offset(k)]; }
  // Euclidean norm of the vector part of cone k.
  double vec_norm(int k) const;
};

// Per-cone Jordan frame: eigenvalues lambda_pm and the unit direction of the
// vector part. direction[k] is empty when the vector part is (numerically)
// zero or the cone has size 1.
struct SpectralData {
  std::vector<double> lambda_plus;
  std::vector<double> lambda_minus;
  std::vector<Eigen::VectorXd> direction;

  bool has_direction(int k) const { return direction[k].size() > 0; }
};

// Relative threshold below which a vector part is treated as zero.
inline double degenerate_tol(double v0) { return 1e-13 * (1.0 + std::abs(v0)); }

// Largest exponent passed to std::exp before we signal overflow.
inline constexpr double kExpOverflowLimit = 700.0;

MulticoneVector identity_element(const ConePartition& p);

SpectralData spectral_decompose(const MulticoneVector& v, double tol);
SpectralData spectral_decompose(const MulticoneVector& v);

MulticoneVector jordan_product(const MulticoneVector& v,
                               const MulticoneVector& w);

// Dense block-diagonal Arw(v); test oracle only, refuses cones larger than
// dense_cap.
Eigen::MatrixXd arrowhead_dense(const MulticoneVector& v, int dense_cap = 512);

// e^{v - shift*e} per cone via the Jordan frame. Throws std::overflow_error
// if any shifted eigenvalue exceeds the double exp range.
MulticoneVector jordan_exp(const MulticoneVector& v, double shift = 0.0);

double trace(const MulticoneVector& v);
double trace_exp(const MulticoneVector& v, double shift = 0.0);

// max over cones of |v0| + ||vec||; equals the spectral norm of Arw(v).
double soc_norm(const MulticoneVector& v);
// soc-norm of a single cone block given as a raw vector.
double soc_norm_block(const Eigen::Ref<const Eigen::VectorXd>& block);

double cone_min_eigenvalue(const MulticoneVector& v);
bool is_in_cone(const MulticoneVector& v, double tol = 0.0);

}  // namespace socpmw
