#ifndef HZ_LINEWIDTH_HPP
#define HZ_LINEWIDTH_HPP

#include <optional>
#include <string>
#include <vector>

#include "hydrogen.hpp"

namespace hz {

// UV cutoff kappa. The exact pipeline requires kappa identically one;
// the quartic Gaussian e^{-r^4} runs in floating point.
enum class CutoffKind { One, Quartic };
CutoffKind cutoff_from_string(const std::string& s);
double cutoff_eval(CutoffKind k, double r);

// Decay operator on the level-n eigenspace, basis ordered by (l, m).
// Prefactor convention: 2/3 in front of the sum over lower levels
// (the momentum form carries the equivalent 8/3).
struct ImZMatrix {
  int n = 0;
  std::vector<Orbital> basis;
  CutoffKind cutoff = CutoffKind::One;
  // exact entries, only populated when cutoff == One
  std::vector<std::vector<Rational>> exact;
  // floating entries, always populated
  std::vector<std::vector<double>> numeric;
  bool empty_sum_warning = false;  // n == 1

  size_t dim() const { return basis.size(); }
};

// Position form: (2/3) sum_{i<j} (E_j-E_i)^3 kappa(E_j-E_i)^2 P_j x P_i x P_j (+y,z).
ImZMatrix im_z_matrix(int n, CutoffKind kappa);
// Momentum form: (8/3) sum_{i<j} (E_j-E_i) kappa(E_j-E_i)^2 P_j p P_i p P_j.
ImZMatrix im_z_momentum_form(int n, CutoffKind kappa);

struct Eigenvalue {
  Rational value;        // exact (cutoff == One)
  double numeric = 0;
  int l = 0;             // angular momentum label of the eigenspace
  int multiplicity = 0;  // 2l+1
};

// Read off the diagonal after verifying the matrix is diagonal in the (l,m)
// basis with m-independent entries. Throws on construction bugs.
std::vector<Eigenvalue> diagonalize(const ImZMatrix& m);

struct PhysicalConstants {
  double alpha = 7.29735e-3;
  double m_kg = 9.10939e-31;
  double c_mps = 2.99792e8;
  double hbar_Js = 1.05457e-34;
};
PhysicalConstants constants_from_file(const std::string& path);

struct LifetimeEntry {
  int l, m;
  Rational im_z;       // diagonal entry, exact
  double im_z_numeric;
  bool infinite;       // zero eigenvalue: no E1 decay at this order
  double tau_seconds;  // valid when !infinite
};

struct LinewidthReport {
  int n;
  PhysicalConstants constants;
  std::vector<Eigenvalue> spectrum;
  std::vector<LifetimeEntry> lifetimes;
};

// tau = hbar / (4 alpha^5 m c^2 lambda); the factor 4 = 2*2 carries the
// survival-probability doubling on top of 2 alpha^5 m c^2 / hbar.
LinewidthReport lifetimes(const ImZMatrix& m, const PhysicalConstants& consts);

std::string im_z_to_exact_text(const ImZMatrix& m);
std::string im_z_to_csv(const ImZMatrix& m);
std::string im_z_to_json(const ImZMatrix& m);
std::string report_to_text(const LinewidthReport& r);
std::string report_to_csv(const LinewidthReport& r);

}  // namespace hz

#endif
