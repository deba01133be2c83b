#ifndef HZ_HYDROGEN_HPP
#define HZ_HYDROGEN_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "polynomial.hpp"

namespace hz {

// Bound-state quantum numbers, validated at construction.
struct Orbital {
  int n, l, m;
  Orbital(int n_, int l_, int m_);
  bool operator==(const Orbital& o) const { return n == o.n && l == o.l && m == o.m; }
  bool operator<(const Orbital& o) const {
    if (n != o.n) return n < o.n;
    if (l != o.l) return l < o.l;
    return m < o.m;
  }
  std::string label() const;
};

enum class Axis { X, Y, Z };
Axis axis_from_char(char c);
char axis_to_char(Axis a);

// Complex value with exact real and imaginary parts.
struct ExactComplex {
  ExactScalar re, im;
  ExactComplex() = default;
  ExactComplex(ExactScalar r) : re(std::move(r)) {}
  ExactComplex(ExactScalar r, ExactScalar i) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex operator+(const ExactComplex& o) const { return {re + o.re, im + o.im}; }
  ExactComplex operator-(const ExactComplex& o) const { return {re - o.re, im - o.im}; }
  ExactComplex operator*(const ExactComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ExactComplex& operator+=(const ExactComplex& o) { return *this = *this + o; }
  ExactComplex conj() const { return {re, -im}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool operator==(const ExactComplex& o) const { return re == o.re && im == o.im; }
  std::string to_string() const;
};

// Exact radial eigenfunction R_{n,l}(r) = prefactor * poly(r) * e^{-rate*r}.
struct RadialFunction {
  int n, l;
  ExactScalar prefactor;   // single term: rational * sqrt(rational)
  Polynomial poly;         // rational coefficients, lowest power r^l
  Rational rate;           // 1/(2n)
  double evaluate(double r) const;
};

// E_n = -1/(4 n^2) in units of 4 Ry.
Rational energy(int n);

RadialFunction radial(int n, int l);

// Exact normalization integral of R_{n,l}: int r^2 R^2 dr.
ExactScalar radial_norm_integral(int n, int l);
// Overlap int r^2 R_{n,l} R_{n',l'} dr (same l for orthogonality checks).
ExactScalar radial_overlap(int n1, int l1, int n2, int l2);

// R^{n1,l1}_{n2,l2} = int r^3 R_{n1,l1} R_{n2,l2} dr, by exact integration.
ExactScalar gordon_radial_integral(int n1, int l1, int n2, int l2);

// |R_{2,1}^{n,0}| = 2 sqrt( 2^15 n^9 (n-2)^{2n-6} / (3 (n+2)^{2n+6}) ),
// valid for n >= 1, n != 2.
ExactScalar gordon_closed_form_21_n0(int n);

// <target | r_axis | source>, exact, with selection-rule zeros explicit.
ExactComplex dipole_element(const Orbital& target, Axis axis, const Orbital& source);

// <target | p_axis | source> via exact differentiation of the source orbital
// (gradient formula); independent of dipole_element.
ExactComplex momentum_element(const Orbital& target, Axis axis, const Orbital& source);

// All orbitals of level n, ordered by (l, m).
std::vector<Orbital> level_basis(int n);

// All dipole elements between two levels.
struct DipoleTable {
  int from_level, to_level;
  // key: (l, m, axis, l', m') for <u_{to,l',m'}| r_axis |u_{from,l,m}>
  std::map<std::tuple<int, int, char, int, int>, ExactComplex> entries;
};
DipoleTable dipole_table(int from_level, int to_level);
std::string dipole_table_to_json(const DipoleTable& t);

}  // namespace hz

#endif
