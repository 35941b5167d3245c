#include "fockweyl/state_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "fockweyl/text.hpp"

namespace fockweyl::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  for (auto f : text::split(trim(line), ' '))
    if (!f.empty()) out.push_back(f);
  return out;
}

int header_value(std::string_view field, std::string_view key) {
  if (field.substr(0, key.size()) != key) {
    throw format_error("state header must read 'modes=<n> cutoff=<N>'");
  }
  return text::parse_int(field.substr(key.size()));
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + text::shortest(v[i]);
  return s;
}

const std::string& require(const KeyValues& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw format_error("missing parameter '" + key + "'");
  return it->second;
}

void reject_unknown(const KeyValues& kv, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : kv) {
    bool known = false;
    for (const char* a : allowed) known = known || k == a;
    if (!known) throw format_error("unknown parameter '" + k + "'");
  }
}

}  // namespace

void write_state(std::ostream& out, const StateVector& state) {
  const auto& basis = state.basis();
  out << "modes=" << basis.n_modes() << " cutoff=" << basis.cutoff() << '\n';
  const auto& amps = state.amplitudes();
  for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
    const cplx a = amps[static_cast<Eigen::Index>(idx)];
    if (a == cplx{0.0, 0.0}) continue;
    const auto occ = basis.occupations(idx);
    for (std::size_t i = 0; i < occ.size(); ++i) out << (i ? "," : "") << occ[i];
    out << ' ' << text::shortest(a.real()) << ' ' << text::shortest(a.imag()) << '\n';
  }
}

StateVector read_state(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw format_error("empty state file");
  const auto head = fields(line);
  if (head.size() != 2) throw format_error("state header must read 'modes=<n> cutoff=<N>'");
  int modes = 0;
  int cutoff = 0;
  try {
    modes = header_value(head[0], "modes=");
    cutoff = header_value(head[1], "cutoff=");
  } catch (const std::invalid_argument& e) {
    throw format_error(std::string("bad state header: ") + e.what());
  }
  if (modes < 1 || cutoff < 1) throw format_error("modes and cutoff must be positive");
  const BasisSpec basis(modes, cutoff);

  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(basis.dimension()));
  std::set<std::size_t> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = fields(line);
    if (f.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (f.size() != 3) throw format_error(where + "expected '<occupations> <re> <im>'");
    MultiIndex occ;
    cplx a;
    try {
      for (auto part : text::split(f[0], ',')) occ.push_back(text::parse_int(part));
      a = {text::parse_double(f[1]), text::parse_double(f[2])};
    } catch (const std::invalid_argument& e) {
      throw format_error(where + e.what());
    }
    if (static_cast<int>(occ.size()) != modes) throw format_error(where + "wrong number of modes");
    for (int n : occ) {
      if (n < 0 || n > cutoff) throw format_error(where + "occupation out of range");
    }
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw format_error(where + "non-finite amplitude");
    }
    const auto idx = basis.index_of(occ);
    if (!seen.insert(idx).second) throw format_error(where + "duplicate index");
    amps[static_cast<Eigen::Index>(idx)] = a;
  }
  return {basis, std::move(amps)};
}

KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos || eq == 0) throw format_error(where + "expected key=value");
    std::string key(trim(t.substr(0, eq)));
    if (!kv.emplace(key, std::string(trim(t.substr(eq + 1)))).second) {
      throw format_error(where + "repeated key '" + key + "'");
    }
  }
  return kv;
}

void write_params(std::ostream& out, const FamilyParams& params) {
  if (const auto* p = std::get_if<entangled::EtaParam>(&params)) {
    out << "family=eta\neta=" << text::format_complex(p->eta) << '\n';
  } else if (const auto* p = std::get_if<entangled::BipartiteEprParam>(&params)) {
    out << "family=xi\nmasses=" << join(p->partition.masses()) << "\nq_cm=" << text::shortest(p->q_cm)
        << "\nrho=" << text::shortest(p->rho) << '\n';
  } else {
    const auto& m = std::get<entangled::MultiEprParam>(params);
    out << "family=multipartite\nmasses=" << join(m.partition.masses())
        << "\nq=" << text::shortest(m.q) << "\nrho=" << join(m.rho) << '\n';
  }
}

FamilyParams params_from_key_values(const KeyValues& kv) {
  const auto& family = require(kv, "family");
  try {
    if (family == "eta") {
      reject_unknown(kv, {"family", "eta"});
      return entangled::EtaParam{text::parse_complex(require(kv, "eta"))};
    }
    if (family == "xi") {
      reject_unknown(kv, {"family", "masses", "q_cm", "rho"});
      return entangled::BipartiteEprParam{text::parse_double(require(kv, "q_cm")),
                                          text::parse_double(require(kv, "rho")),
                                          MassPartition(text::parse_double_list(require(kv, "masses")))};
    }
    if (family == "multipartite" || family == "tripartite") {
      reject_unknown(kv, {"family", "masses", "q", "rho"});
      return entangled::MultiEprParam{text::parse_double(require(kv, "q")),
                                      text::parse_double_list(require(kv, "rho")),
                                      MassPartition(text::parse_double_list(require(kv, "masses")))};
    }
  } catch (const std::invalid_argument& e) {
    throw format_error(std::string("bad parameter value: ") + e.what());
  }
  throw format_error("unknown family '" + family + "'");
}

ExponentSpec exponent_of(const FamilyParams& params) {
  if (const auto* p = std::get_if<entangled::EtaParam>(&params)) return entangled::eta_exponent(*p);
  if (const auto* p = std::get_if<entangled::BipartiteEprParam>(&params)) {
    return entangled::xi_exponent(*p);
  }
  const auto& m = std::get<entangled::MultiEprParam>(params);
  if (m.partition.size() == 3) return entangled::tripartite_exponent(m);
  return entangled::multipartite_exponent(m);
}

void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    try {
      writer(out);
    } catch (...) {
      out.close();
      std::filesystem::remove(tmp);
      throw;
    }
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace fockweyl::io
