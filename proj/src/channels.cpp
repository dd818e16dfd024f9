#include "liewedge/channels.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace liewedge {

Mat H_x() { return Mat::real({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}); }
Mat H_y() { return Mat::real({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}); }
Mat H_z() { return Mat::real({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}); }
Mat p_x() { return Mat::real({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}); }
Mat p_y() { return Mat::real({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}); }
Mat p_z() { return Mat::real({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}); }

Mat E_diag(int i) {
  if (i < 1 || i > 3) throw DomainError("E_ii index must be 1, 2 or 3");
  Mat e = Mat::zeros(3, 3);
  e(i - 1, i - 1) = 1.0;
  return e;
}

Mat Delta(int i, int j) { return E_diag(i) - E_diag(j); }

Mat Delta_ex3() { return (2.0 / 9.0) * Mat::identity(3) + (1.0 / 18.0) * Delta(1, 2) + (8.0 / 9.0) * Delta(1, 3); }

Mat r3_named(const std::string& name) {
  if (name == "H_x") return H_x();
  if (name == "H_y") return H_y();
  if (name == "H_z") return H_z();
  if (name == "p_x") return p_x();
  if (name == "p_y") return p_y();
  if (name == "p_z") return p_z();
  if (name == "E11") return E_diag(1);
  if (name == "E22") return E_diag(2);
  if (name == "E33") return E_diag(3);
  if (name == "I") return Mat::identity(3);
  throw DomainError("unknown r3 element '" + name + "'");
}

namespace {

int axis_index(char a) {
  switch (a) {
    case 'x': return 0;
    case 'y': return 1;
    case 'z': return 2;
  }
  throw DomainError(std::string("axis must be x, y or z, got '") + a + "'");
}

std::string single(char a) { return std::string(1, a); }

// Ad of a local rotation about c acting on sigma_a: returns the coefficients
// of sigma_a and sigma_q where q is the third axis.
struct Rotated {
  double ca;
  double cq;
  char q;
};

Rotated rotate_axis(char c, char a, double theta) {
  if (c == a) return {1.0, 0.0, a};
  const char q = third_axis(c, a);
  return {std::cos(theta), epsilon(c, a, q) * std::sin(theta), q};
}

void require_rates(const ChannelSpec& spec, std::size_t n) {
  if (spec.rates.size() != n)
    throw DomainError(to_string(spec.name) + " takes " + std::to_string(n) + " rate(s), got " +
                      std::to_string(spec.rates.size()));
  for (double r : spec.rates)
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("rates must be finite and nonnegative");
}

bool is_two_qubit(ChannelName n) {
  return n == ChannelName::two_qubit_A || n == ChannelName::two_qubit_B || n == ChannelName::two_qubit_C;
}

bool is_r3(ChannelName n) {
  return n == ChannelName::example1 || n == ChannelName::example2 || n == ChannelName::example3;
}

char flip_axis(ChannelName n) {
  switch (n) {
    case ChannelName::bit_flip: return 'x';
    case ChannelName::phase_flip: return 'z';
    case ChannelName::bit_phase_flip: return 'y';
    default: break;
  }
  throw DomainError("not a flip channel");
}

void check_pauli_label(const std::string& label, std::size_t qubits) {
  if (label.size() != qubits) throw DomainError("axis label '" + label + "' has the wrong length");
  for (char ch : label)
    if (ch != '1' && ch != 'x' && ch != 'y' && ch != 'z') throw DomainError("bad axis label '" + label + "'");
  if (label.find_first_not_of('1') == std::string::npos) throw DomainError("identity is not a valid axis");
}

}  // namespace

int epsilon(char p, char q, char r) {
  const int a = axis_index(p), b = axis_index(q), c = axis_index(r);
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

char third_axis(char a, char b) {
  const int i = axis_index(a), j = axis_index(b);
  if (i == j) throw DomainError("third_axis needs two different axes");
  return "xyz"[3 - i - j];
}

std::string to_string(ChannelName name) {
  switch (name) {
    case ChannelName::bit_flip: return "bit_flip";
    case ChannelName::phase_flip: return "phase_flip";
    case ChannelName::bit_phase_flip: return "bit_phase_flip";
    case ChannelName::depolarizing: return "depolarizing";
    case ChannelName::example1: return "example1";
    case ChannelName::example2: return "example2";
    case ChannelName::example3: return "example3";
    case ChannelName::two_qubit_A: return "two_qubit_A";
    case ChannelName::two_qubit_B: return "two_qubit_B";
    case ChannelName::two_qubit_C: return "two_qubit_C";
  }
  return "?";
}

ChannelName channel_from_string(const std::string& s) {
  for (auto n : {ChannelName::bit_flip, ChannelName::phase_flip, ChannelName::bit_phase_flip,
                 ChannelName::depolarizing, ChannelName::example1, ChannelName::example2, ChannelName::example3,
                 ChannelName::two_qubit_A, ChannelName::two_qubit_B, ChannelName::two_qubit_C})
    if (to_string(n) == s) return n;
  throw DomainError("unknown channel '" + s + "'");
}

ChannelSpec default_spec(ChannelName name) {
  ChannelSpec s;
  s.name = name;
  switch (name) {
    case ChannelName::bit_flip:
    case ChannelName::phase_flip:
    case ChannelName::bit_phase_flip: s.rates = {1.0}; break;
    case ChannelName::depolarizing: s.rates = {1.0, 0.5, 0.25}; break;
    case ChannelName::example1:
      s.rates = {3.0, 2.0, 1.0};
      s.control_axes = {"x", "y"};
      s.drift_axis = "z";
      break;
    case ChannelName::example2:
    case ChannelName::example3:
      s.rates = {1.0};
      s.control_axes = {"y"};
      s.drift_axis = "z";
      break;
    case ChannelName::two_qubit_A:
      s.rates = {1.0, 0.5};
      s.control_axes = {"x1", "y1", "1x", "1y", "zz"};
      s.noise_axes = {'z', 'z'};
      break;
    case ChannelName::two_qubit_B:
      s.rates = {1.0, 0.5};
      s.control_axes = {"x1", "y1", "1x", "1y"};
      s.drift_axis = "zz";
      s.noise_axes = {'z', 'z'};
      break;
    case ChannelName::two_qubit_C:
      s.rates = {1.0, 0.5};
      s.control_axes = {"x1", "1y"};
      s.noise_axes = {'z', 'z'};
      break;
  }
  return s;
}

ControlSystem build_system(const ChannelSpec& spec) {
  ControlSystem sys;
  if (is_r3(spec.name)) {
    sys.rep = Rep::r3;
    if (spec.name == ChannelName::example1) {
      require_rates(spec, 3);
      sys.relaxation = Mat::diag({spec.rates[0], spec.rates[1], spec.rates[2]});
    } else {
      require_rates(spec, 1);
      const double g = spec.rates[0];
      sys.relaxation = spec.name == ChannelName::example2 ? Mat::diag({g, 0.0, g}) : Mat::diag({g, g, 2.0 * g});
    }
    for (const auto& a : spec.control_axes) sys.controls.push_back(r3_named("H_" + a));
    if (spec.drift_axis) sys.drift_h = r3_named("H_" + *spec.drift_axis);
    validate(sys);
    return sys;
  }

  if (!is_two_qubit(spec.name)) {
    sys.rep = Rep::qubit;
    for (const auto& a : spec.control_axes) {
      check_pauli_label(a, 1);
      sys.controls.push_back(0.5 * pauli_string(a));
    }
    if (spec.drift_axis) {
      check_pauli_label(*spec.drift_axis, 1);
      sys.drift_h = 0.5 * pauli_string(*spec.drift_axis);
    }
    if (spec.name == ChannelName::depolarizing) {
      require_rates(spec, 3);
      const char axes[] = {'x', 'y', 'z'};
      for (int k = 0; k < 3; ++k)
        if (spec.rates[k] > 0.0) sys.lindblad.push_back({pauli(axes[k]), spec.rates[k]});
    } else {
      require_rates(spec, 1);
      if (spec.rates[0] > 0.0) sys.lindblad.push_back({pauli(flip_axis(spec.name)), spec.rates[0]});
    }
    validate(sys);
    return sys;
  }

  sys.rep = Rep::two_qubit;
  require_rates(spec, 2);
  std::vector<char> noise = spec.noise_axes.empty() ? std::vector<char>{'z', 'z'} : spec.noise_axes;
  if (noise.size() != 2) throw DomainError("two-qubit systems take exactly two local noise axes");
  for (const auto& a : spec.control_axes) {
    check_pauli_label(a, 2);
    sys.controls.push_back(0.5 * pauli_string(a));
  }
  if (spec.name == ChannelName::two_qubit_C) {
    if (spec.control_axes.size() != 2 || spec.control_axes[0][1] != '1' || spec.control_axes[0][0] == '1' ||
        spec.control_axes[1][0] != '1' || spec.control_axes[1][1] == '1')
      throw DomainError("two_qubit_C takes one local control per qubit, e.g. {x1, 1y}");
    sys.drift_h = 0.5 * (pauli_string("z1") + pauli_string("1z") + pauli_string("zz"));
  } else if (spec.drift_axis) {
    check_pauli_label(*spec.drift_axis, 2);
    sys.drift_h = 0.5 * pauli_string(*spec.drift_axis);
  }
  if (spec.rates[0] > 0.0) sys.lindblad.push_back({pauli_string(std::string{noise[0], '1'}), spec.rates[0]});
  if (spec.rates[1] > 0.0) sys.lindblad.push_back({pauli_string(std::string{'1', noise[1]}), spec.rates[1]});
  validate(sys);
  return sys;
}

Mat k_component(char c, char d, double theta) {
  const cplx i{0.0, 1.0};
  const auto r = rotate_axis(c, d, theta);
  Mat out = (i * r.ca) * sigma_hat(single(d));
  if (r.cq != 0.0) out += (i * r.cq) * sigma_hat(single(r.q));
  return out;
}

std::vector<PauliTerm> p_component_terms(char c, std::span<const AxisRate> ks, double theta) {
  if (ks.empty() || ks.size() > 3) throw DomainError("p_component takes one to three Lindblad axes");
  std::set<char> seen;
  for (const auto& k : ks) {
    axis_index(k.axis);
    if (!seen.insert(k.axis).second) throw DomainError("repeated Lindblad axis");
    if (k.rate < 0.0) throw DomainError("negative Lindblad rate");
  }
  axis_index(c);
  auto sq = [](char a) {
    const Mat s = sigma_hat(single(a));
    return s * s;
  };
  auto ac = [](char a, char b) { return acomm(sigma_hat(single(a)), sigma_hat(single(b))); };
  const double co = std::cos(theta), si = std::sin(theta);

  // Axes orthogonal to c, and the rate on c itself (if any).
  std::vector<AxisRate> perp;
  std::optional<AxisRate> along;
  for (const auto& k : ks) {
    if (k.axis == c)
      along = k;
    else
      perp.push_back(k);
  }

  std::vector<PauliTerm> out;
  if (along) out.push_back({2.0 * along->rate, sq(c), "s" + single(c) + "^2"});
  if (perp.size() == 1) {
    const auto [k, g] = perp[0];
    const char r = third_axis(c, k);
    const int e = epsilon(c, k, r);
    out.push_back({2.0 * g * co * co, sq(k), "s" + single(k) + "^2"});
    out.push_back({2.0 * g * si * si, sq(r), "s" + single(r) + "^2"});
    out.push_back({2.0 * g * co * si * e, ac(k, r), "{s" + single(k) + ",s" + single(r) + "}"});
  } else if (perp.size() == 2) {
    const auto [k, g] = perp[0];
    const auto [kp, gp] = perp[1];
    const int e = epsilon(c, k, kp);
    out.push_back({2.0 * (g * co * co + gp * si * si), sq(k), "s" + single(k) + "^2"});
    out.push_back({2.0 * (gp * co * co + g * si * si), sq(kp), "s" + single(kp) + "^2"});
    out.push_back({2.0 * (g - gp) * co * si * e, ac(k, kp), "{s" + single(k) + ",s" + single(kp) + "}"});
  }
  return out;
}

Mat p_component(char c, std::span<const AxisRate> ks, double theta) {
  Mat out = Mat::zeros(4, 4);
  for (const auto& t : p_component_terms(c, ks, theta)) out += t.coef * t.op;
  return out;
}

KrausSet kraus_family(const ChannelSpec& spec, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("Kraus time must be finite and nonnegative");
  if (!spec.control_axes.empty() || spec.drift_axis)
    throw DomainError("Kraus families are only available for purely dissipative channels");
  KrausSet k;
  k.time = t;
  if (spec.name == ChannelName::depolarizing) {
    require_rates(spec, 3);
    const double ax = 2.0 * spec.rates[0], ay = 2.0 * spec.rates[1], az = 2.0 * spec.rates[2];
    // Bloch-axis decay factors: x decays at a_y + a_z, y at a_x + a_z, z at a_x + a_y.
    const double e1 = std::exp(-(ax + az) * t);
    const double e2 = std::exp(-(ay + az) * t);
    const double e3 = std::exp(-(ax + ay) * t);
    const double r0 = 0.25 * (1 + e1 + e2 + e3);
    const double r1 = 0.25 * (1 - e1 + e2 - e3);
    const double r2 = 0.25 * (1 + e1 - e2 - e3);
    const double r3 = 0.25 * (1 - e1 - e2 + e3);
    k.operators = {std::sqrt(std::max(r0, 0.0)) * pauli('1'), std::sqrt(std::max(r1, 0.0)) * pauli('x'),
                   std::sqrt(std::max(r2, 0.0)) * pauli('y'), std::sqrt(std::max(r3, 0.0)) * pauli('z')};
    return k;
  }
  if (is_r3(spec.name) || is_two_qubit(spec.name))
    throw DomainError("Kraus families are only tabulated for single-qubit channels");
  require_rates(spec, 1);
  const double a = 2.0 * spec.rates[0];
  const double q = 0.5 * (1 + std::exp(-a * t));
  const double r = 0.5 * (1 - std::exp(-a * t));
  k.operators = {std::sqrt(q) * pauli('1'), std::sqrt(std::max(r, 0.0)) * pauli(flip_axis(spec.name))};
  return k;
}

Mat kraus_superop(const KrausSet& k) {
  if (k.operators.empty()) throw ShapeError("empty Kraus set");
  const auto n = k.operators.front().rows();
  Mat out = Mat::zeros(n * n, n * n);
  for (const auto& e : k.operators) out += kron(e.conj(), e);
  return out.max_abs_imag() < 1e-15 ? out.realified(1e-15) : out;
}

double kraus_completeness_residual(const KrausSet& k) {
  if (k.operators.empty()) throw ShapeError("empty Kraus set");
  const auto n = k.operators.front().rows();
  Mat s = Mat::zeros(n, n);
  for (const auto& e : k.operators) s += e.adjoint() * e;
  return max_abs_diff(s, Mat::identity(n));
}

std::size_t kraus_rank(const Superop& t) {
  const auto audit = cptp_audit(t);
  if (!audit.is_cp) throw DomainError("kraus_rank needs a completely positive map");
  const Mat m = t.carrier == Carrier::vec ? t.matrix : superop_from_coherence(t.matrix, t.n, 1.0);
  Mat c = choi(m);
  c = 0.5 * (c + c.adjoint());
  const auto ev = eig_sym(c, 1e-8).values;
  const double top = std::max(ev.front(), 0.0);
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double v) { return v > 1e-8 * top; }));
}

namespace {

void require_two_qubit_C(const ChannelSpec& spec) {
  if (spec.name != ChannelName::two_qubit_C) throw DomainError("two_qubit_wedge_generators needs a two_qubit_C spec");
  build_system(spec);
}

}  // namespace

Mat two_qubit_wedge_generators(const ChannelSpec& spec, double theta, double theta_p) {
  require_two_qubit_C(spec);
  const cplx i{0.0, 1.0};
  const char c = spec.control_axes[0][0];
  const char cp = spec.control_axes[1][1];
  const std::vector<char> noise = spec.noise_axes.empty() ? std::vector<char>{'z', 'z'} : spec.noise_axes;
  const char k = noise[0], kp = noise[1];
  const double g = spec.rates[0], gp = spec.rates[1];

  auto sh = [](char a, char b) { return sigma_hat(std::string{a, b}); };

  // K^c + K^c' + K^cc': local rotations of z1, 1z and of both factors of zz.
  const auto ra = rotate_axis(c, 'z', theta);
  const auto rb = rotate_axis(cp, 'z', theta_p);
  Mat out = i * (ra.ca * sh('z', '1') + rb.ca * sh('1', 'z') + (ra.ca * rb.ca) * sh('z', 'z'));
  if (ra.cq != 0.0) out += i * (ra.cq * sh(ra.q, '1') + (ra.cq * rb.ca) * sh(ra.q, 'z'));
  if (rb.cq != 0.0) out += i * (rb.cq * sh('1', rb.q) + (ra.ca * rb.cq) * sh('z', rb.q));
  if (ra.cq != 0.0 && rb.cq != 0.0) out += i * ((ra.cq * rb.cq) * sh(ra.q, rb.q));

  // P^c_k on the first qubit and P^c'_k' on the second.
  auto local_p = [&](char ctrl, char noise_axis, double rate, double angle, bool first) {
    auto s = [&](char a) { return first ? sh(a, '1') : sh('1', a); };
    if (ctrl == noise_axis) {
      const Mat sk = s(noise_axis);
      return (2.0 * rate) * (sk * sk);
    }
    const char r = third_axis(ctrl, noise_axis);
    const double co = std::cos(angle), si = std::sin(angle);
    const Mat sk = s(noise_axis), sr = s(r);
    return (2.0 * rate * co * co) * (sk * sk) + (2.0 * rate * si * si) * (sr * sr) +
           (2.0 * rate * co * si * epsilon(ctrl, noise_axis, r)) * acomm(sk, sr);
  };
  out += local_p(c, k, g, theta, true);
  out += local_p(cp, kp, gp, theta_p, false);
  return out;
}

Mat two_qubit_conjugated_drift(const ChannelSpec& spec, double theta, double theta_p) {
  require_two_qubit_C(spec);
  const auto sys = build_system(spec);
  const cplx i{0.0, 1.0};
  const Mat e = (-i * theta) * sigma_hat(spec.control_axes[0]) + (-i * theta_p) * sigma_hat(spec.control_axes[1]);
  return expm(e) * drift_generator(sys) * expm(-1.0 * e);
}

}  // namespace liewedge
