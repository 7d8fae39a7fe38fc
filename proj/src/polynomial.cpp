#include "dqaoa/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dqaoa/error.hpp"

namespace dqaoa {

VarSet canonical_vars(VarSet vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

MultilinearPolynomial::MultilinearPolynomial(double constant) { add_term({}, constant); }

MultilinearPolynomial::MultilinearPolynomial(std::initializer_list<Term> terms) {
  for (const auto& t : terms) add_term(t.vars, t.coeff);
}

MultilinearPolynomial MultilinearPolynomial::variable(int index) {
  MultilinearPolynomial p;
  p.add_term({index}, 1.0);
  return p;
}

void MultilinearPolynomial::add_term(VarSet vars, double coeff) {
  if (coeff == 0.0) return;
  vars = canonical_vars(std::move(vars));
  if (!vars.empty() && vars.front() < 0) throw InputError("negative variable index");
  auto [it, inserted] = terms_.try_emplace(std::move(vars), coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < kCoeffEpsilon) terms_.erase(it);
}

double MultilinearPolynomial::coefficient(const VarSet& vars) const {
  auto it = terms_.find(vars);
  return it == terms_.end() ? 0.0 : it->second;
}

int MultilinearPolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [vars, c] : terms_) d = std::max(d, vars.size());
  return static_cast<int>(d);
}

std::vector<int> MultilinearPolynomial::variables() const {
  std::vector<int> out;
  for (const auto& [vars, c] : terms_) out.insert(out.end(), vars.begin(), vars.end());
  return canonical_vars(std::move(out));
}

int MultilinearPolynomial::max_var() const {
  int m = -1;
  for (const auto& [vars, c] : terms_)
    if (!vars.empty()) m = std::max(m, vars.back());
  return m;
}

double MultilinearPolynomial::evaluate(std::span<const std::uint8_t> x) const {
  if (max_var() >= static_cast<int>(x.size()))
    throw InputError("assignment does not cover variable index " + std::to_string(max_var()));
  double sum = 0.0;
  for (const auto& [vars, c] : terms_) {
    bool on = true;
    for (int v : vars) {
      if (!x[v]) {
        on = false;
        break;
      }
    }
    if (on) sum += c;
  }
  return sum;
}

MultilinearPolynomial MultilinearPolynomial::without_constant() const {
  MultilinearPolynomial p = *this;
  p.terms_.erase(VarSet{});
  return p;
}

MultilinearPolynomial& MultilinearPolynomial::operator+=(const MultilinearPolynomial& other) {
  for (const auto& [vars, c] : other.terms_) add_term(vars, c);
  return *this;
}

MultilinearPolynomial& MultilinearPolynomial::operator-=(const MultilinearPolynomial& other) {
  for (const auto& [vars, c] : other.terms_) add_term(vars, -c);
  return *this;
}

MultilinearPolynomial& MultilinearPolynomial::operator*=(double factor) {
  if (factor == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= factor;
    if (std::abs(it->second) < kCoeffEpsilon)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

MultilinearPolynomial operator*(const MultilinearPolynomial& a, const MultilinearPolynomial& b) {
  MultilinearPolynomial out;
  for (const auto& [va, ca] : a.terms()) {
    for (const auto& [vb, cb] : b.terms()) {
      VarSet merged;
      merged.reserve(va.size() + vb.size());
      std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(merged));
      out.add_term(std::move(merged), ca * cb);
    }
  }
  return out;
}

std::string MultilinearPolynomial::to_string(const std::vector<std::string>* names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [vars, c] : terms_) {
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    os << std::abs(c);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      os << (k == 0 ? " " : "*");
      if (names && vars[k] < static_cast<int>(names->size()))
        os << (*names)[vars[k]];
      else
        os << "x" << vars[k];
    }
  }
  return os.str();
}

}  // namespace dqaoa
