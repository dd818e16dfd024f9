#include "liewedge/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace liewedge {

namespace {

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a) + " vs " +
                     shape_string(b));
  }
}

void require_square(const Mat& a, const char* op) {
  if (!a.square()) throw ShapeError(std::string(op) + ": square matrix required, got " + shape_string(a));
}

Field join(Field a, Field b) {
  return (a == Field::real && b == Field::real) ? Field::real : Field::complex;
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, cplx{0.0, 0.0}) {}

Mat Mat::zeros(std::size_t rows, std::size_t cols, Field field) { return Mat(rows, cols, field); }

Mat Mat::identity(std::size_t n, Field field) {
  Mat m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diag(std::span<const double> d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::diag(std::initializer_list<double> d) {
  return diag(std::span<const double>(d.begin(), d.size()));
}

Mat Mat::real(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  Mat m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("Mat::real: ragged rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Mat Mat::complex(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  Mat m(r, c, Field::complex);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("Mat::complex: ragged rows");
    std::size_t j = 0;
    for (cplx v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

void Mat::set(std::size_t i, std::size_t j, cplx v) {
  if (v.imag() != 0.0) field_ = Field::complex;
  (*this)(i, j) = v;
}

Mat Mat::promoted() const {
  Mat m = *this;
  m.field_ = Field::complex;
  return m;
}

Mat Mat::realified(double tol) const {
  Mat m = *this;
  for (auto& v : m.data_) {
    if (std::abs(v.imag()) > tol) {
      throw DomainError("realified: imaginary part " + std::to_string(v.imag()) + " exceeds tolerance");
    }
    v = cplx{v.real(), 0.0};
  }
  m.field_ = Field::real;
  return m;
}

double Mat::max_abs_imag() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v.imag()));
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::conj() const {
  Mat c = *this;
  for (auto& v : c.data_) v = std::conj(v);
  return c;
}

Mat Mat::adjoint() const {
  Mat t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

cplx Mat::trace() const {
  require_square(*this, "trace");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Mat& Mat::operator+=(const Mat& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  field_ = join(field_, o.field_);
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  field_ = join(field_, o.field_);
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Mat& Mat::operator*=(cplx s) {
  if (s.imag() == 0.0) return *this *= s.real();
  for (auto& v : data_) v *= s;
  field_ = Field::complex;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ " + shape_string(a) + " * " + shape_string(b));
  }
  Mat c(a.rows(), b.cols(), join(a.field(), b.field()));
  const std::size_t n = a.cols();
  const std::size_t m = b.cols();
  if (c.is_real()) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a(i, k).real();
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) c(i, j) += aik * b(k, j).real();
      }
    return c;
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < m; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool Mat::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

std::vector<double> Mat::flatten() const {
  std::vector<double> out;
  if (is_real()) {
    out.reserve(data_.size());
    for (const auto& v : data_) out.push_back(v.real());
  } else {
    out.reserve(2 * data_.size());
    for (const auto& v : data_) {
      out.push_back(v.real());
      out.push_back(v.imag());
    }
  }
  return out;
}

Mat Mat::unflatten(std::span<const double> v, std::size_t rows, std::size_t cols, Field field) {
  Mat m(rows, cols, field);
  const std::size_t n = rows * cols;
  if (field == Field::real) {
    if (v.size() != n) throw ShapeError("unflatten: length mismatch");
    for (std::size_t k = 0; k < n; ++k) m.data_[k] = v[k];
  } else {
    if (v.size() != 2 * n) throw ShapeError("unflatten: length mismatch");
    for (std::size_t k = 0; k < n; ++k) m.data_[k] = cplx{v[2 * k], v[2 * k + 1]};
  }
  return m;
}

std::string shape_string(const Mat& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols() << (m.is_real() ? " real" : " complex");
  return os.str();
}

double inner(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "inner");
  double s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) s += da[k].real() * db[k].real() + da[k].imag() * db[k].imag();
  return s;
}

double norm(const Mat& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double norm1(const Mat& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols(), join(a.field(), b.field()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

Mat comm(const Mat& a, const Mat& b) {
  require_square(a, "comm");
  require_same_shape(a, b, "comm");
  return a * b - b * a;
}

Mat acomm(const Mat& a, const Mat& b) {
  require_square(a, "acomm");
  require_same_shape(a, b, "acomm");
  return a * b + b * a;
}

Mat expm(const Mat& a) {
  require_square(a, "expm");
  const std::size_t n = a.rows();
  const double nrm = norm1(a);
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  Mat x = a * std::ldexp(1.0, -squarings);

  Mat sum = Mat::identity(n, a.field());
  Mat term = Mat::identity(n, a.field());
  for (int k = 1; k <= 60; ++k) {
    term = term * x;
    term *= 1.0 / k;
    sum += term;
    if (norm1(term) <= 1e-18 * norm1(sum)) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Mat inverse(const Mat& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  Mat lu = a.promoted();
  Mat inv = Mat::identity(n, Field::complex);
  const double scale = std::max(norm1(a), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > best) {
        best = std::abs(lu(r, col));
        piv = r;
      }
    }
    if (best <= 1e-14 * scale) throw DomainError("inverse: matrix is numerically singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(col, j), lu(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    }
    const cplx d = lu(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      lu(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx f = lu(r, col);
      if (f == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        lu(r, j) -= f * lu(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return a.is_real() ? inv.realified(1e-12) : inv;
}

namespace {

// Denman-Beavers square root iteration.
Mat sqrtm_db(const Mat& a) {
  Mat y = a;
  Mat z = Mat::identity(a.rows(), a.field());
  for (int it = 0; it < 100; ++it) {
    Mat yi = inverse(y);
    Mat zi = inverse(z);
    Mat y_next = (y + zi) * 0.5;
    Mat z_next = (z + yi) * 0.5;
    const double change = norm1(y_next - y);
    y = std::move(y_next);
    z = std::move(z_next);
    if (change <= 1e-15 * norm1(y)) break;
  }
  return y;
}

}  // namespace

Mat logm(const Mat& a) {
  require_square(a, "logm");
  const std::size_t n = a.rows();
  const Mat eye = Mat::identity(n, a.field());
  Mat x = a;
  int k = 0;
  while (norm1(x - eye) > 0.25) {
    if (++k > 64) throw ConvergenceError("logm: square-root reduction did not converge");
    x = sqrtm_db(x);
  }
  // log X = 2 atanh(Z), Z = (X - I)(X + I)^{-1}
  const Mat z = (x - eye) * inverse(x + eye);
  const Mat z2 = z * z;
  Mat power = z;
  Mat sum = z;
  for (int j = 3; j < 200; j += 2) {
    power = power * z2;
    Mat term = power * (1.0 / j);
    sum += term;
    if (norm1(term) <= 1e-18 * std::max(norm1(sum), 1e-300)) break;
  }
  Mat out = sum * std::ldexp(2.0, k);
  return a.is_real() ? out.realified(1e-9) : out;
}

bool is_hermitian(const Mat& a, double tol) {
  if (!a.square()) return false;
  return norm(a - a.adjoint()) <= tol * std::max(1.0, norm(a));
}

bool is_skew_hermitian(const Mat& a, double tol) {
  if (!a.square()) return false;
  return norm(a + a.adjoint()) <= tol * std::max(1.0, norm(a));
}

EigResult eig_sym(const Mat& s, double symmetry_tol) {
  require_square(s, "eig_sym");
  if (!is_hermitian(s, symmetry_tol)) throw DomainError("eig_sym: input is not symmetric/Hermitian");
  const std::size_t n = s.rows();
  Mat a = (s + s.adjoint()) * 0.5;
  Mat v = Mat::identity(n, s.field());
  const double scale = std::max(norm(a), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-16 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const cplx phase = a(p, q) / mag;
        if (phase != cplx{1.0, 0.0}) {
          const cplx cp = std::conj(phase);
          for (std::size_t k = 0; k < n; ++k) {
            a(k, q) *= cp;
            v(k, q) *= cp;
          }
          for (std::size_t k = 0; k < n; ++k) a(q, k) *= phase;
        }
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  EigResult r;
  r.values.reserve(n);
  r.vectors = Mat(n, n, s.field());
  for (std::size_t k = 0; k < n; ++k) {
    r.values.push_back(a(order[k], order[k]).real());
    for (std::size_t i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
  }
  return r;
}

Subspace::Subspace(std::size_t rows, std::size_t cols, Field field, double tol)
    : rows_(rows), cols_(cols), field_(field), tol_(tol) {}

std::size_t Subspace::ambient_dim() const {
  return rows_ * cols_ * (field_ == Field::real ? 1 : 2);
}

Mat Subspace::project(const Mat& a) const {
  if (a.rows() != rows_ || a.cols() != cols_) throw ShapeError("Subspace::project: shape mismatch");
  Mat p(rows_, cols_, field_);
  for (const auto& b : basis_) p += b * inner(b, a);
  return p;
}

std::vector<double> Subspace::coordinates(const Mat& a) const {
  std::vector<double> c;
  c.reserve(basis_.size());
  for (const auto& b : basis_) c.push_back(inner(b, a));
  return c;
}

bool Subspace::try_extend(const Mat& a) {
  if (a.rows() != rows_ || a.cols() != cols_) throw ShapeError("Subspace::try_extend: shape mismatch");
  if (field_ == Field::real && !a.is_real()) {
    field_ = Field::complex;
    for (auto& b : basis_) b = b.promoted();
  }
  const double scale = std::max(1.0, norm(a));
  if (basis_.size() >= ambient_dim()) return false;
  Mat r = field_ == Field::complex && a.is_real() ? a.promoted() : a;
  const auto rd = r.data();
  double rn = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis_) {
      const double c = inner(b, r);
      const auto bd = b.data();
      for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= c * bd[k];
    }
    rn = norm(r);
    if (rn <= tol_ * scale) return false;
  }
  r *= 1.0 / rn;
  basis_.push_back(std::move(r));
  return true;
}

Subspace orthonormal_span(std::span<const Mat> gens, std::size_t rows, std::size_t cols, Field field,
                          double tol) {
  Field f = field;
  for (const auto& g : gens) {
    if (g.rows() != rows || g.cols() != cols) throw ShapeError("orthonormal_span: generators differ in shape");
    if (!g.is_real()) f = Field::complex;
  }
  Subspace out(rows, cols, f, tol);
  std::vector<Mat> residual(gens.begin(), gens.end());
  double largest = 0.0;
  for (const auto& g : residual) largest = std::max(largest, norm(g));
  if (largest == 0.0) return out;

  std::vector<bool> used(residual.size(), false);
  for (;;) {
    std::size_t pick = residual.size();
    double best = tol * largest;
    for (std::size_t k = 0; k < residual.size(); ++k) {
      if (used[k]) continue;
      const double rn = norm(residual[k]);
      if (rn > best) {
        best = rn;
        pick = k;
      }
    }
    if (pick == residual.size()) break;
    used[pick] = true;
    Mat q = residual[pick];
    for (const auto& b : out.basis()) q -= b * inner(b, q);
    const double qn = norm(q);
    if (qn <= tol * largest) continue;
    q *= 1.0 / qn;
    // try_extend re-checks against the basis; q is already orthogonal.
    out.try_extend(q);
    const Mat& added = out.basis().back();
    for (std::size_t k = 0; k < residual.size(); ++k)
      if (!used[k]) residual[k] -= added * inner(added, residual[k]);
  }
  return out;
}

Subspace orthonormal_span(std::span<const Mat> gens, double tol) {
  if (gens.empty()) return Subspace(0, 0, Field::real, tol);
  return orthonormal_span(gens, gens.front().rows(), gens.front().cols(), gens.front().field(), tol);
}

}  // namespace liewedge
