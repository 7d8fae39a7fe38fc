#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dqaoa {

/// Sorted, duplicate-free list of variable indices. The empty set is the constant monomial.
using VarSet = std::vector<int>;

/// 0/1 value per variable index.
using BoolAssignment = std::vector<std::uint8_t>;

/// Coefficients with magnitude below this are treated as zero and dropped.
inline constexpr double kCoeffEpsilon = 1e-12;

struct Term {
  VarSet vars;
  double coeff = 0.0;
};

/// Sparse multilinear polynomial over Boolean variables.
///
/// Always canonical: at most one term per variable set, no zero coefficients, and
/// every power of a variable collapses to the variable itself (x*x = x).
class MultilinearPolynomial {
 public:
  MultilinearPolynomial() = default;
  explicit MultilinearPolynomial(double constant);
  MultilinearPolynomial(std::initializer_list<Term> terms);

  static MultilinearPolynomial variable(int index);

  /// Accumulate `coeff * prod(vars)`. `vars` may be unsorted and contain repeats.
  void add_term(VarSet vars, double coeff);

  double coefficient(const VarSet& vars) const;
  double constant() const { return coefficient({}); }

  const std::map<VarSet, double>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  int degree() const;
  /// Sorted distinct variable indices referenced by any term.
  std::vector<int> variables() const;
  int num_vars() const { return static_cast<int>(variables().size()); }
  /// Largest referenced index, or -1 for a constant polynomial.
  int max_var() const;

  /// Exact sum of term values. `x` must cover every referenced index.
  double evaluate(std::span<const std::uint8_t> x) const;

  /// Copy without the constant term.
  MultilinearPolynomial without_constant() const;

  MultilinearPolynomial& operator+=(const MultilinearPolynomial& other);
  MultilinearPolynomial& operator-=(const MultilinearPolynomial& other);
  MultilinearPolynomial& operator*=(double factor);

  friend MultilinearPolynomial operator+(MultilinearPolynomial a, const MultilinearPolynomial& b) { return a += b; }
  friend MultilinearPolynomial operator-(MultilinearPolynomial a, const MultilinearPolynomial& b) { return a -= b; }
  friend MultilinearPolynomial operator*(MultilinearPolynomial a, double f) { return a *= f; }
  friend MultilinearPolynomial operator*(double f, MultilinearPolynomial a) { return a *= f; }
  friend MultilinearPolynomial operator*(const MultilinearPolynomial& a, const MultilinearPolynomial& b);

  bool operator==(const MultilinearPolynomial& other) const = default;

  std::string to_string(const std::vector<std::string>* names = nullptr) const;

 private:
  std::map<VarSet, double> terms_;
};

/// Canonical form of an arbitrary index list: sorted with repeats removed.
VarSet canonical_vars(VarSet vars);

}  // namespace dqaoa
