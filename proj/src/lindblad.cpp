#include "liewedge/lindblad.hpp"

#include <algorithm>
#include <cmath>

namespace liewedge {

std::string to_string(Rep rep) {
  switch (rep) {
    case Rep::r3: return "r3";
    case Rep::qubit: return "qubit";
    case Rep::two_qubit: return "two_qubit";
  }
  return "?";
}

Rep rep_from_string(const std::string& s) {
  if (s == "r3") return Rep::r3;
  if (s == "qubit") return Rep::qubit;
  if (s == "two_qubit") return Rep::two_qubit;
  throw DomainError("unknown representation '" + s + "'");
}

std::size_t hilbert_dim(Rep rep) { return rep == Rep::two_qubit ? 4 : 2; }

std::size_t generator_dim(Rep rep) {
  if (rep == Rep::r3) return 3;
  const auto n = hilbert_dim(rep);
  return n * n;
}

void validate(const ControlSystem& sys, double tol) {
  if (sys.rep == Rep::r3) {
    auto skew3 = [&](const Mat& m, const char* what) {
      if (m.rows() != 3 || m.cols() != 3) throw ShapeError(std::string(what) + " must be 3x3");
      if (m.max_abs_imag() > tol || !is_skew_hermitian(m, tol))
        throw DomainError(std::string(what) + " must be real skew-symmetric");
    };
    if (!sys.drift_h.empty()) skew3(sys.drift_h, "drift");
    for (const auto& c : sys.controls) skew3(c, "control");
    if (!sys.lindblad.empty()) throw DomainError("r3 systems take a relaxation matrix, not Lindblad operators");
    if (!sys.relaxation.empty()) {
      const auto& g = sys.relaxation;
      if (g.rows() != 3 || g.cols() != 3) throw ShapeError("relaxation must be 3x3");
      if (g.max_abs_imag() > tol || !is_hermitian(g, tol)) throw DomainError("relaxation must be real symmetric");
      if (eig_sym(g).values.back() < -tol) throw DomainError("relaxation must be positive semidefinite");
    }
    return;
  }
  const auto n = hilbert_dim(sys.rep);
  auto herm = [&](const Mat& m, const char* what) {
    if (m.rows() != n || m.cols() != n)
      throw ShapeError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!is_hermitian(m, tol)) throw DomainError(std::string(what) + " must be Hermitian");
  };
  if (!sys.drift_h.empty()) herm(sys.drift_h, "drift");
  for (const auto& c : sys.controls) herm(c, "control");
  for (const auto& t : sys.lindblad) {
    if (t.op.rows() != n || t.op.cols() != n) throw ShapeError("Lindblad operator has wrong shape");
    if (!(t.rate >= 0.0) || !std::isfinite(t.rate)) throw DomainError("Lindblad rates must be finite and nonnegative");
  }
  if (!sys.relaxation.empty()) throw DomainError("relaxation matrix is only used by r3 systems");
}

Mat pauli(char axis) {
  const cplx i{0.0, 1.0};
  switch (axis) {
    case '1': return Mat::identity(2);
    case 'x': return Mat::real({{0, 1}, {1, 0}});
    case 'y': return Mat::complex({{0, -i}, {i, 0}});
    case 'z': return Mat::real({{1, 0}, {0, -1}});
  }
  throw DomainError(std::string("unknown Pauli axis '") + axis + "'");
}

Mat pauli_string(const std::string& label) {
  if (label.empty()) throw DomainError("empty Pauli label");
  Mat out = pauli(label[0]);
  for (std::size_t k = 1; k < label.size(); ++k) out = kron(out, pauli(label[k]));
  return out;
}

Mat sigma_hat(const std::string& label) { return ad_hat(0.5 * pauli_string(label)); }

Mat ad_hat(const Mat& h) {
  if (!h.square()) throw ShapeError("ad_hat needs a square matrix, got " + shape_string(h));
  if (!is_hermitian(h)) throw DomainError("ad_hat needs a Hermitian matrix");
  const auto id = Mat::identity(h.rows());
  return kron(id, h) - kron(h.transpose(), id);
}

Mat gks_dissipator(const std::vector<LindbladTerm>& ops) {
  if (ops.empty()) throw ShapeError("gks_dissipator needs at least one operator");
  const auto n = ops.front().op.rows();
  const auto id = Mat::identity(n);
  Mat out = Mat::zeros(n * n, n * n);
  for (const auto& [v, rate] : ops) {
    if (!v.square() || v.rows() != n) throw ShapeError("Lindblad operators must share a square shape");
    if (rate < 0.0) throw DomainError("negative Lindblad rate");
    const Mat vv = v.adjoint() * v;
    Mat term = 0.5 * (kron(id, vv) + kron(vv.transpose(), id)) - kron(v.conj(), v);
    out += rate * term;
  }
  return out.max_abs_imag() == 0.0 ? out.realified() : out;
}

Mat hamiltonian_generator(const ControlSystem& sys, const Mat& h) {
  if (sys.rep == Rep::r3) return h;
  return cplx{0.0, 1.0} * ad_hat(h);
}

Mat dissipator(const ControlSystem& sys) {
  const auto d = generator_dim(sys.rep);
  if (sys.rep == Rep::r3) return sys.relaxation.empty() ? Mat::zeros(3, 3) : sys.relaxation;
  if (sys.lindblad.empty()) return Mat::zeros(d, d);
  return gks_dissipator(sys.lindblad);
}

Mat drift_generator(const ControlSystem& sys) {
  const auto d = generator_dim(sys.rep);
  Mat out = dissipator(sys);
  if (!sys.drift_h.empty()) out += hamiltonian_generator(sys, sys.drift_h);
  if (out.rows() != d) throw ShapeError("drift generator has wrong shape");
  return out;
}

std::vector<Mat> control_generators(const ControlSystem& sys) {
  std::vector<Mat> out;
  out.reserve(sys.controls.size());
  for (const auto& c : sys.controls) out.push_back(hamiltonian_generator(sys, c));
  return out;
}

Superop lindbladian(const ControlSystem& sys, std::span<const double> u) {
  if (u.size() != sys.controls.size())
    throw ShapeError("control vector has length " + std::to_string(u.size()) + ", system has " +
                     std::to_string(sys.controls.size()) + " controls");
  Mat m = drift_generator(sys);
  for (std::size_t j = 0; j < u.size(); ++j)
    if (u[j] != 0.0) m += u[j] * hamiltonian_generator(sys, sys.controls[j]);
  return {std::move(m), sys.rep == Rep::r3 ? Carrier::coherence : Carrier::vec, hilbert_dim(sys.rep)};
}

namespace {

std::vector<std::string> pauli_labels(std::size_t qubits) {
  std::vector<std::string> out{""};
  for (std::size_t q = 0; q < qubits; ++q) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : {'1', 'x', 'y', 'z'}) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

std::size_t qubit_count(std::size_t n) {
  std::size_t q = 0;
  for (std::size_t m = 1; m < n; m *= 2) ++q;
  if ((std::size_t{1} << q) != n || q == 0) throw DomainError("Hilbert dimension must be a power of two");
  return q;
}

std::size_t side_from_superop(const Mat& s) {
  if (!s.square()) throw ShapeError("superoperator must be square");
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
  if (n * n != s.rows()) throw ShapeError("superoperator size is not a square number");
  return n;
}

Mat apply(const Mat& superop, const Mat& x) {
  const auto n = x.rows();
  Mat v(n * n, 1, x.field());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) v(j * n + i, 0) = x(i, j);
  const Mat y = superop * v;
  Mat out(n, n, y.field());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = y(j * n + i, 0);
  return out;
}

Mat vec_of(const Mat& x) {
  const auto n = x.rows();
  Mat v(n * n, 1, x.field());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) v(j * n + i, 0) = x(i, j);
  return v;
}

}  // namespace

std::vector<Mat> coherence_basis(std::size_t n) {
  const auto q = qubit_count(n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Mat> out;
  for (const auto& label : pauli_labels(q)) {
    if (label.find_first_not_of('1') == std::string::npos) continue;
    Mat b = s * pauli_string(label).conj();
    out.push_back(b.max_abs_imag() == 0.0 ? b.realified() : b);
  }
  return out;
}

Mat coherence_rep(const Mat& superop, double tol) {
  const auto n = side_from_superop(superop);
  const auto basis = coherence_basis(n);
  const double scale = std::max(1.0, norm(superop));
  const Mat e0 = (1.0 / std::sqrt(static_cast<double>(n))) * Mat::identity(n);

  const Mat image_of_identity = apply(superop, e0);
  for (const auto& b : basis)
    if (std::abs(inner(b, image_of_identity)) > tol * scale)
      throw DomainError("superoperator is not unital: identity leaks into the traceless part");

  const auto d = basis.size();
  Mat out(d, d, Field::complex);
  for (std::size_t b = 0; b < d; ++b) {
    const Mat y = apply(superop, basis[b]);
    if (std::abs(y.trace()) > tol * scale)
      throw DomainError("superoperator is not trace-annihilating on traceless input");
    for (std::size_t a = 0; a < d; ++a) {
      const Mat prod = basis[a].adjoint() * y;
      out(a, b) = prod.trace();
    }
  }
  if (out.max_abs_imag() > tol * scale)
    throw DomainError("superoperator does not preserve Hermiticity");
  return out.realified(tol * scale);
}

Mat coherence_rep(const Superop& t, double tol) {
  if (t.carrier == Carrier::coherence) return t.matrix;
  return coherence_rep(t.matrix, tol);
}

Mat superop_from_coherence(const Mat& m, std::size_t n, double identity_block) {
  const auto basis = coherence_basis(n);
  if (m.rows() != basis.size() || m.cols() != basis.size())
    throw ShapeError("coherence matrix has shape " + shape_string(m) + ", expected " +
                     std::to_string(basis.size()) + "x" + std::to_string(basis.size()));
  const Mat e0 = vec_of((1.0 / std::sqrt(static_cast<double>(n))) * Mat::identity(n));
  Mat out = identity_block * (e0 * e0.adjoint());
  std::vector<Mat> vb;
  vb.reserve(basis.size());
  for (const auto& b : basis) vb.push_back(vec_of(b));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (m(a, b) != cplx{}) out += m(a, b) * (vb[a] * vb[b].adjoint());
  return out.max_abs_imag() < 1e-15 ? out.realified(1e-15) : out;
}

Mat choi(const Mat& superop) {
  const auto n = side_from_superop(superop);
  Mat c(n * n, n * n, superop.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t b = 0; b < n; ++b) c(i * n + a, j * n + b) = superop(b * n + a, j * n + i);
  return c;
}

CptpReport cptp_audit(const Superop& t, double tp_tol, double cp_tol) {
  Mat m = t.carrier == Carrier::vec ? t.matrix : superop_from_coherence(t.matrix, t.n, 1.0);
  const auto n = side_from_superop(m);
  CptpReport r;
  const Mat vi = vec_of(Mat::identity(n));
  const Mat row = vi.adjoint() * m;
  const Mat diff = row - vi.adjoint();
  r.tp_residual = 0.0;
  for (auto z : diff.data()) r.tp_residual = std::max(r.tp_residual, std::abs(z));
  r.is_tp = r.tp_residual <= tp_tol;
  Mat c = choi(m);
  // Symmetrise away rounding before the Hermitian eigensolve.
  c = 0.5 * (c + c.adjoint());
  r.choi_min_eig = eig_sym(c, 1e-8).values.back();
  r.is_cp = r.choi_min_eig >= -cp_tol;
  return r;
}

}  // namespace liewedge
