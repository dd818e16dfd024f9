#include "liewedge/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "liewedge/channels.hpp"

namespace liewedge {

ParseError::ParseError(std::size_t line, std::string field, const std::string& what)
    : DomainError("line " + std::to_string(line) + " [" + field + "]: " + what), line_(line), field_(std::move(field)) {}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw DomainError("not a number: '" + std::string(s) + "'");
  if (!std::isfinite(v)) throw DomainError("non-finite number: '" + std::string(s) + "'");
  return v;
}

double parse_unit_coefficient(std::string_view s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s);
}

struct Entry {
  cplx value;
  bool complex = false;
};

Entry parse_entry(std::string_view s) {
  if (s.empty() || s.back() != 'i') return {parse_real(s), false};
  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string_view::npos) return {{0.0, parse_unit_coefficient(body)}, true};
  return {{parse_real(body.substr(0, split)), parse_unit_coefficient(body.substr(split))}, true};
}

std::vector<std::string_view> split_entries(std::string_view row) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < row.size()) {
    while (k < row.size() && (row[k] == ' ' || row[k] == '\t' || row[k] == ',')) ++k;
    const std::size_t b = k;
    while (k < row.size() && row[k] != ' ' && row[k] != '\t' && row[k] != ',') ++k;
    if (k > b) out.push_back(row.substr(b, k - b));
  }
  return out;
}

}  // namespace

Mat parse_matrix(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw DomainError("matrix literal must be enclosed in [ ]");
  text = text.substr(1, text.size() - 2);
  std::vector<std::vector<Entry>> rows;
  bool complex = false;
  while (true) {
    const auto semi = text.find(';');
    const auto entries = split_entries(text.substr(0, semi));
    std::vector<Entry> row;
    for (auto e : entries) {
      row.push_back(parse_entry(e));
      complex = complex || row.back().complex;
    }
    rows.push_back(std::move(row));
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  if (rows.size() == 1 && rows[0].empty()) throw DomainError("empty matrix literal");
  for (const auto& r : rows)
    if (r.size() != rows[0].size())
      throw DomainError("ragged matrix literal: rows of length " + std::to_string(rows[0].size()) + " and " +
                        std::to_string(r.size()));
  Mat m(rows.size(), rows[0].size(), complex ? Field::complex : Field::real);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j].value;
  return m;
}

std::string format_matrix(const Mat& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      const cplx z = m(i, j);
      out += format_double(z.real());
      if (!m.is_real()) {
        out += std::signbit(z.imag()) ? "-" : "+";
        out += format_double(std::abs(z.imag()));
        out += 'i';
      }
    }
  }
  return out + "]";
}

namespace {

struct Statement {
  std::size_t line;
  std::string key;
  std::string value;
};

bool is_pauli_label(std::string_view s, std::size_t qubits) {
  if (s.size() != qubits) return false;
  for (char c : s)
    if (c != '1' && c != 'x' && c != 'y' && c != 'z') return false;
  return true;
}

std::size_t qubit_count(Rep rep) { return rep == Rep::two_qubit ? 2 : 1; }

Mat operand(const Statement& st, std::string_view text, Rep rep, bool hamiltonian) {
  text = trim(text);
  if (text.empty()) throw ParseError(st.line, st.key, "missing operand");
  Mat m;
  if (text.front() == '[') {
    try {
      m = parse_matrix(text);
    } catch (const DomainError& e) {
      throw ParseError(st.line, st.key, e.what());
    }
  } else if (rep == Rep::r3) {
    try {
      m = r3_named(std::string(text));
    } catch (const DomainError&) {
      throw ParseError(st.line, st.key, "unknown r3 element '" + std::string(text) + "'");
    }
  } else {
    if (!is_pauli_label(text, qubit_count(rep)))
      throw ParseError(st.line, st.key, "expected a Pauli label of length " + std::to_string(qubit_count(rep)) +
                                            ", got '" + std::string(text) + "'");
    m = pauli_string(std::string(text));
    if (hamiltonian) m *= 0.5;
  }
  const std::size_t n = rep == Rep::r3 ? 3 : hilbert_dim(rep);
  if (m.rows() != n || m.cols() != n)
    throw ParseError(st.line, st.key, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
                                          shape_string(m));
  if (rep == Rep::r3) {
    if (!m.is_real() && m.max_abs_imag() > 0.0) throw ParseError(st.line, st.key, "r3 elements must be real");
    if (hamiltonian && !is_skew_hermitian(m)) throw ParseError(st.line, st.key, "r3 Hamiltonians must be skew");
    if (!hamiltonian && !is_hermitian(m)) throw ParseError(st.line, st.key, "relaxation must be symmetric");
  } else if (hamiltonian && !is_hermitian(m)) {
    throw ParseError(st.line, st.key, "Hamiltonians must be Hermitian");
  }
  return m;
}

template <class T>
T parse_count(const Statement& st) {
  const std::string_view v = trim(st.value);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
    throw ParseError(st.line, st.key, "expected a nonnegative integer, got '" + std::string(v) + "'");
  return out;
}

}  // namespace

SystemFile parse_system(std::string_view text) {
  std::vector<Statement> statements;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sp = line.find_first_of(" \t");
    statements.push_back({line_no, std::string(line.substr(0, sp)),
                          sp == std::string_view::npos ? std::string{} : std::string(trim(line.substr(sp)))});
  }

  SystemFile f;
  const Statement* rep_st = nullptr;
  for (const auto& st : statements)
    if (st.key == "rep") {
      if (rep_st) throw ParseError(st.line, st.key, "duplicate statement");
      rep_st = &st;
    }
  if (!rep_st) throw ParseError(0, "rep", "missing rep statement");
  try {
    f.system.rep = rep_from_string(rep_st->value);
  } catch (const DomainError&) {
    throw ParseError(rep_st->line, "rep", "unknown representation '" + rep_st->value + "'");
  }
  const Rep rep = f.system.rep;

  bool have_drift = false;
  for (const auto& st : statements) {
    if (st.key == "rep") continue;
    if (st.key == "drift") {
      if (have_drift) throw ParseError(st.line, st.key, "duplicate statement");
      have_drift = true;
      f.system.drift_h = operand(st, st.value, rep, true);
    } else if (st.key == "control") {
      f.system.controls.push_back(operand(st, st.value, rep, true));
    } else if (st.key == "lindblad") {
      if (rep == Rep::r3) throw ParseError(st.line, st.key, "r3 systems take a relaxation matrix instead");
      const auto sp = st.value.find_first_of(" \t");
      if (sp == std::string::npos) throw ParseError(st.line, st.key, "expected RATE followed by an operator");
      double rate = 0.0;
      try {
        rate = parse_real(st.value.substr(0, sp));
      } catch (const DomainError& e) {
        throw ParseError(st.line, st.key, e.what());
      }
      if (rate < 0.0) throw ParseError(st.line, st.key, "negative rate");
      f.system.lindblad.push_back({operand(st, std::string_view(st.value).substr(sp), rep, false), rate});
    } else if (st.key == "relaxation") {
      if (rep != Rep::r3) throw ParseError(st.line, st.key, "only r3 systems take a relaxation matrix");
      if (!f.system.relaxation.empty()) throw ParseError(st.line, st.key, "duplicate statement");
      f.system.relaxation = operand(st, st.value, rep, false);
    } else if (st.key == "samples") {
      f.samples = parse_count<std::size_t>(st);
    } else if (st.key == "rounds") {
      f.rounds = parse_count<std::size_t>(st);
    } else if (st.key == "seed") {
      f.seed = parse_count<std::uint64_t>(st);
    } else if (st.key == "tol") {
      try {
        f.tol = parse_real(st.value);
      } catch (const DomainError& e) {
        throw ParseError(st.line, st.key, e.what());
      }
      if (!(*f.tol > 0.0)) throw ParseError(st.line, st.key, "tolerance must be positive");
    } else {
      throw ParseError(st.line, st.key, "unknown statement");
    }
  }
  if (rep == Rep::r3 && f.system.relaxation.empty()) throw ParseError(0, "relaxation", "r3 systems need a relaxation");
  try {
    validate(f.system);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, "system", e.what());
  }
  return f;
}

SystemFile load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "file", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string emit_system(const SystemFile& f) {
  const auto& s = f.system;
  std::string out = "rep " + to_string(s.rep) + "\n";
  if (!s.drift_h.empty()) out += "drift " + format_matrix(s.drift_h) + "\n";
  for (const auto& c : s.controls) out += "control " + format_matrix(c) + "\n";
  for (const auto& l : s.lindblad) out += "lindblad " + format_double(l.rate) + " " + format_matrix(l.op) + "\n";
  if (!s.relaxation.empty()) out += "relaxation " + format_matrix(s.relaxation) + "\n";
  if (f.samples) out += "samples " + std::to_string(*f.samples) + "\n";
  if (f.rounds) out += "rounds " + std::to_string(*f.rounds) + "\n";
  if (f.tol) out += "tol " + format_double(*f.tol) + "\n";
  if (f.seed) out += "seed " + std::to_string(*f.seed) + "\n";
  return out;
}

Json matrix_json(const Mat& m) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array(), q = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      q.push_back(m(i, j).imag());
    }
    re.push_back(std::move(r));
    if (!m.is_real()) im.push_back(std::move(q));
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["field"] = m.is_real() ? "real" : "complex";
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

Json matrices_json(const std::vector<Mat>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

Json system_json(const ControlSystem& sys) {
  Json j;
  j["rep"] = to_string(sys.rep);
  j["hilbert_dim"] = hilbert_dim(sys.rep);
  j["generator_dim"] = generator_dim(sys.rep);
  j["drift"] = sys.drift_h.empty() ? Json(nullptr) : matrix_json(sys.drift_h);
  j["controls"] = matrices_json(sys.controls);
  Json lind = Json::array();
  for (const auto& l : sys.lindblad) {
    Json t;
    t["rate"] = l.rate;
    t["op"] = matrix_json(l.op);
    lind.push_back(std::move(t));
  }
  j["lindblad"] = std::move(lind);
  j["relaxation"] = sys.relaxation.empty() ? Json(nullptr) : matrix_json(sys.relaxation);
  return j;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && is_scalar(e);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += "\n" + pad;
        dump_into(e, indent, depth + 1, out);
      }
      if (!flat) out += "\n" + close;
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += "\n" + pad + Json(k).dump() + ": ";
        dump_into(v, indent, depth + 1, out);
      }
      out += "\n" + close + '}';
      return;
    }
    default: out += j.dump(); return;
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out + "\n";
}

}  // namespace liewedge
