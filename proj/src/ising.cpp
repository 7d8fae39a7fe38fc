#include "dqaoa/ising.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dqaoa/error.hpp"
#include "dqaoa/format.hpp"
#include "dqaoa/kernels.hpp"

namespace dqaoa {

bool is_valid_spins(std::span<const Spin> z) {
  for (Spin s : z)
    if (s != 1 && s != -1) return false;
  return true;
}

IsingModel::IsingModel(int n) : n_(n), linear_(n, 0.0), labels_(n) {
  if (n < 0) throw InputError("negative spin count");
}

int IsingModel::add_spin(std::string label) {
  linear_.push_back(0.0);
  labels_.push_back(std::move(label));
  return n_++;
}

void IsingModel::add_linear(int k, double w) {
  if (k < 0 || k >= n_) throw InputError("linear term index out of range");
  linear_[k] += w;
  if (std::abs(linear_[k]) < 1e-12) linear_[k] = 0.0;
}

void IsingModel::add_coupling(int i, int j, double w) {
  if (i == j) throw InputError("self-coupling z_i z_i is a constant; add it to the offset");
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw InputError("coupling index out of range");
  if (w == 0.0) return;
  if (i > j) std::swap(i, j);
  auto [it, inserted] = quadratic_.try_emplace({i, j}, w);
  if (!inserted) it->second += w;
  if (std::abs(it->second) < 1e-12) quadratic_.erase(it);
}

double IsingModel::coupling(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = quadratic_.find({i, j});
  return it == quadratic_.end() ? 0.0 : it->second;
}

std::vector<Coupling> IsingModel::coupling_list() const {
  std::vector<Coupling> out;
  out.reserve(quadratic_.size());
  for (const auto& [ij, w] : quadratic_) out.push_back({ij.first, ij.second, w});
  return out;
}

std::vector<std::vector<std::pair<int, double>>> IsingModel::adjacency() const {
  std::vector<std::vector<std::pair<int, double>>> adj(n_);
  for (const auto& [ij, w] : quadratic_) {
    adj[ij.first].emplace_back(ij.second, w);
    adj[ij.second].emplace_back(ij.first, w);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<int> IsingModel::degrees() const {
  std::vector<int> d(n_, 0);
  for (const auto& [ij, w] : quadratic_) {
    ++d[ij.first];
    ++d[ij.second];
  }
  return d;
}

std::string IsingModel::label(int k) const {
  const auto& l = labels_.at(k);
  return l.empty() ? "z" + std::to_string(k) : l;
}

double energy(const IsingModel& model, std::span<const Spin> z) {
  if (static_cast<int>(z.size()) != model.size())
    throw InputError("spin assignment has " + std::to_string(z.size()) + " entries, model has " +
                     std::to_string(model.size()));
  double e = model.offset();
  const auto& lin = model.linear_terms();
  for (int k = 0; k < model.size(); ++k) e += lin[k] * z[k];
  for (const auto& [ij, w] : model.couplings()) e += w * z[ij.first] * z[ij.second];
  return e;
}

GroundState brute_force_min(const IsingModel& model) { return kernels::omp::brute_force_min(model); }

double SubModel::energy(std::span<const Spin> local) const {
  double e = dqaoa::energy(model, local);
  for (std::size_t i = 0; i < boundary_linear.size(); ++i) e += boundary_linear[i] * local[i];
  return e;
}

IsingModel SubModel::with_boundary() const {
  IsingModel m = model;
  for (std::size_t i = 0; i < boundary_linear.size(); ++i) m.add_linear(static_cast<int>(i), boundary_linear[i]);
  return m;
}

IsingModel induced_model(const IsingModel& model, std::span<const int> nodes) {
  std::vector<int> local(model.size(), -1);
  IsingModel out(static_cast<int>(nodes.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int g = nodes[k];
    if (g < 0 || g >= model.size()) throw InputError("node index out of range");
    if (local[g] >= 0) throw InputError("duplicate node in induced set");
    local[g] = static_cast<int>(k);
    out.set_label(static_cast<int>(k), model.labels()[g]);
    out.add_linear(static_cast<int>(k), model.linear(g));
  }
  for (const auto& [ij, w] : model.couplings()) {
    const int a = local[ij.first], b = local[ij.second];
    if (a >= 0 && b >= 0) out.add_coupling(a, b, w);
  }
  return out;
}

SubModel induced_submodel(const IsingModel& model, std::span<const int> interior, std::span<const Spin> exterior_fix) {
  if (static_cast<int>(exterior_fix.size()) != model.size())
    throw InputError("exterior assignment must be indexed over all spins");
  SubModel sub;
  sub.model = induced_model(model, interior);
  sub.to_global.assign(interior.begin(), interior.end());
  sub.boundary_linear.assign(interior.size(), 0.0);
  std::vector<int> local(model.size(), -1);
  for (std::size_t k = 0; k < interior.size(); ++k) {
    local[interior[k]] = static_cast<int>(k);
    if (exterior_fix[interior[k]] != 0) throw InputError("interior and fixed exterior spins overlap");
  }
  for (const auto& [ij, w] : model.couplings()) {
    const int a = local[ij.first], b = local[ij.second];
    if ((a >= 0) == (b >= 0)) continue;
    const int inner = a >= 0 ? a : b;
    const int outer = a >= 0 ? ij.second : ij.first;
    const Spin s = exterior_fix[outer];
    if (s == 0) throw InputError("coupling from interior spin to unfixed exterior spin " + std::to_string(outer));
    sub.boundary_linear[inner] += w * s;
  }
  return sub;
}

IsingModel parse_graph(std::string_view text) {
  struct Line {
    char kind;
    int i, j;
    double w;
  };
  std::vector<Line> lines;
  int n = 0;
  int declared = -1;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string kind;
    if (!(ls >> kind)) continue;
    Line l{kind.size() == 1 ? kind[0] : '?', 0, 0, 0.0};
    bool ok = false;
    switch (l.kind) {
      case 'q': ok = static_cast<bool>(ls >> l.i >> l.j >> l.w); break;
      case 'l': ok = static_cast<bool>(ls >> l.i >> l.w); break;
      case 'c': ok = static_cast<bool>(ls >> l.w); break;
      case 'n': ok = static_cast<bool>(ls >> declared) && declared >= 0; break;
      default: throw ParseError(line_no, 1, "expected 'q', 'l', 'c' or 'n', found '" + kind + "'");
    }
    std::string extra;
    if (!ok || (ls >> extra)) throw ParseError(line_no, 1, "malformed '" + kind + "' line");
    if ((l.kind == 'q' || l.kind == 'l') && (l.i < 0 || (l.kind == 'q' && l.j < 0)))
      throw ParseError(line_no, 1, "negative spin index");
    if (l.kind == 'q' && l.i == l.j) throw ParseError(line_no, 1, "self-coupling is not allowed");
    if (l.kind == 'q') n = std::max({n, l.i + 1, l.j + 1});
    if (l.kind == 'l') n = std::max(n, l.i + 1);
    if (l.kind != 'n') lines.push_back(l);
  }
  if (declared >= 0) {
    if (declared < n) throw ParseError(line_no, 1, "declared spin count smaller than referenced indices");
    n = declared;
  }
  IsingModel m(n);
  for (const auto& l : lines) {
    if (l.kind == 'q') m.add_coupling(l.i, l.j, l.w);
    if (l.kind == 'l') m.add_linear(l.i, l.w);
    if (l.kind == 'c') m.add_offset(l.w);
  }
  return m;
}

std::string format_graph(const IsingModel& model) {
  std::ostringstream os;
  os << "n " << model.size() << "\n";
  for (const auto& [ij, w] : model.couplings()) os << "q " << ij.first << " " << ij.second << " " << format_number(w) << "\n";
  for (int k = 0; k < model.size(); ++k)
    if (model.linear(k) != 0.0) os << "l " << k << " " << format_number(model.linear(k)) << "\n";
  if (model.offset() != 0.0) os << "c " << format_number(model.offset()) << "\n";
  return os.str();
}

SpinAssignment spins_from_basis(std::uint64_t b, int n) {
  SpinAssignment z(n);
  for (int k = 0; k < n; ++k) z[k] = ((b >> k) & 1ULL) ? -1 : 1;
  return z;
}

std::uint64_t basis_from_spins(std::span<const Spin> z) {
  std::uint64_t b = 0;
  for (std::size_t k = 0; k < z.size(); ++k)
    if (z[k] < 0) b |= (1ULL << k);
  return b;
}

}  // namespace dqaoa
