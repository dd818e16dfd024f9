#pragma once

// Dense kernels for the small matrices used throughout the library:
// Hamiltonians, superoperators and cone generators all live in a Mat.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace liewedge {

using cplx = std::complex<double>;

/// Raised when operand shapes do not fit an operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates a mathematical precondition
/// (non-Hermitian Hamiltonian, negative duration, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative procedure fails to stabilise.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Field { real, complex };

/// Dense row-major matrix over the complex numbers with a field tag.
/// Real-tagged matrices keep every imaginary part at exactly zero.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, Field field = Field::real);

  static Mat zeros(std::size_t rows, std::size_t cols, Field field = Field::real);
  static Mat identity(std::size_t n, Field field = Field::real);
  static Mat diag(std::span<const double> d);
  static Mat diag(std::initializer_list<double> d);
  /// Real matrix from nested row lists.
  static Mat real(std::initializer_list<std::initializer_list<double>> rows);
  /// Complex matrix from nested row lists.
  static Mat complex(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool square() const { return rows_ == cols_; }
  Field field() const { return field_; }
  bool is_real() const { return field_ == Field::real; }

  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Writing a value with a nonzero imaginary part into a real matrix is
  /// undefined; call set() or promote first.
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, cplx v);

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  /// Copy tagged complex.
  Mat promoted() const;
  /// Drops imaginary parts below tol and retags as real; throws DomainError
  /// if a larger imaginary part is present.
  Mat realified(double tol = 1e-10) const;
  double max_abs_imag() const;

  Mat transpose() const;
  Mat conj() const;
  Mat adjoint() const;
  cplx trace() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);
  Mat& operator*=(cplx s);

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator-(Mat a) { return a *= -1.0; }
  friend Mat operator*(Mat a, double s) { return a *= s; }
  friend Mat operator*(double s, Mat a) { return a *= s; }
  friend Mat operator*(Mat a, cplx s) { return a *= s; }
  friend Mat operator*(cplx s, Mat a) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b);

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool all_finite() const;

  /// Real coordinates (re, im interleaved for complex carriers) such that the
  /// Euclidean dot product equals inner().
  std::vector<double> flatten() const;
  /// Inverse of flatten() for a matrix of the given shape and field.
  static Mat unflatten(std::span<const double> v, std::size_t rows, std::size_t cols, Field field);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_ = Field::real;
  std::vector<cplx> data_;
};

std::string shape_string(const Mat& m);

/// Trace inner product Re tr(A^dagger B).
double inner(const Mat& a, const Mat& b);
/// Frobenius norm.
double norm(const Mat& a);
/// Maximum absolute column sum.
double norm1(const Mat& a);
/// Largest absolute entry difference.
double max_abs_diff(const Mat& a, const Mat& b);

Mat kron(const Mat& a, const Mat& b);
/// Commutator AB - BA.
Mat comm(const Mat& a, const Mat& b);
/// Anticommutator AB + BA.
Mat acomm(const Mat& a, const Mat& b);

/// Matrix exponential by Taylor series with scaling and squaring.
Mat expm(const Mat& a);
/// Principal matrix logarithm by inverse scaling and squaring. Requires no
/// eigenvalues on the closed negative real axis.
Mat logm(const Mat& a);
/// Inverse via LU with partial pivoting; throws DomainError when singular.
Mat inverse(const Mat& a);

bool is_hermitian(const Mat& a, double tol = 1e-10);
bool is_skew_hermitian(const Mat& a, double tol = 1e-10);

struct EigResult {
  std::vector<double> values;  // descending
  Mat vectors;                 // column k pairs with values[k]
};

/// Cyclic Jacobi eigensolver for real symmetric or complex Hermitian input.
EigResult eig_sym(const Mat& s, double symmetry_tol = 1e-10);

/// Orthonormal basis (under inner()) of a real linear span of matrices.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t rows, std::size_t cols, Field field, double tol = 1e-9);

  std::size_t dim() const { return basis_.size(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }
  /// Real dimension of the ambient matrix space.
  std::size_t ambient_dim() const;
  double tol() const { return tol_; }
  const std::vector<Mat>& basis() const { return basis_; }

  /// Orthogonal projection onto the span.
  Mat project(const Mat& a) const;
  /// Coefficients of the projection in the stored basis.
  std::vector<double> coordinates(const Mat& a) const;
  /// Gram-Schmidt a candidate against the basis; appends and returns true if
  /// the residual exceeds tol * max(1, |a|).
  bool try_extend(const Mat& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_ = Field::real;
  double tol_ = 1e-9;
  std::vector<Mat> basis_;
};

/// Gram-Schmidt with pivoting on residual norm; vectors whose residual drops
/// below tol times the largest input norm are discarded.
Subspace orthonormal_span(std::span<const Mat> gens, double tol = 1e-9);
/// Overload for empty input where the ambient shape cannot be inferred.
Subspace orthonormal_span(std::span<const Mat> gens, std::size_t rows, std::size_t cols,
                          Field field, double tol = 1e-9);

}  // namespace liewedge
