#ifndef HZ_TOYMODEL_HPP
#define HZ_TOYMODEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace hz {

// One-photon-sector toy Hamiltonian: discrete levels (vacuum sector) coupled
// to a discretized photon continuum. H = H_0 + g W with W linking vacuum
// sublevels to one-photon states.
struct ToyConfig {
  std::vector<double> levels;        // strictly increasing
  std::vector<int> degeneracy;       // per level, >= 1 (default all 1)
  std::vector<double> couple_scale;  // per sublevel (flattened), default all 1
  int j = -1;                        // distinguished level index, default last
  std::string grid = "tanh";         // "linear" | "tanh" (stretched toward omega*)
  int K = 400;
  double omega_max = -1;             // default 10*(E_j - E_0)
  double g = 0.05;
  // G(w) = const * w^pow * exp(-decay*w^2). The default constant keeps the
  // default two-level model well inside the perturbative regime at g = 0.05
  // (second-order corrections to the golden-rule rate scale with const^2).
  double coupling_const = 0.4;
  double coupling_pow = 0.5;
  double coupling_decay = 1.0;

  static ToyConfig from_file(const std::string& path);
  static ToyConfig from_string(const std::string& text);
  std::string to_string() const;
};

struct ToyModel {
  ToyConfig cfg;
  std::vector<double> nodes;    // omega_1 < ... < omega_K > 0
  std::vector<double> weights;  // positive quadrature weights
  int n_vac = 0;                // total vacuum sublevels
  int dim = 0;                  // n_vac * (1 + K)
  Eigen::MatrixXd h0;           // diagonal part
  Eigen::MatrixXd w;            // coupling (without g)
  bool no_continuum = false;    // K == 0: diagonal H, flagged

  Eigen::MatrixXd hamiltonian() const { return h0 + cfg.g * w; }
  // closed-form coupling amplitude
  double amplitude(double omega) const;
  std::complex<double> amplitude_sq_analytic(std::complex<double> omega) const;
  int sublevel_offset(int level) const;   // index of first vacuum sublevel
  int level_of_sublevel(int s) const;
  // index of the distinguished level's first sublevel, and its degeneracy
  int j_offset() const { return sublevel_offset(cfg.j); }
  int dj() const { return cfg.degeneracy[cfg.j]; }
  // FNV-1a over the Hamiltonian bytes; used for reproducibility goldens
  unsigned long long checksum() const;
};

ToyModel build_model(const ToyConfig& cfg);

struct SurvivalSeries {
  std::vector<double> times;
  std::vector<std::complex<double>> values;
};

// A(s) = <phi1, e^{-i s H} phi2> via dense symmetric eigendecomposition.
SurvivalSeries survival_amplitude(const ToyModel& model, const Eigen::VectorXd& phi1,
                                  const Eigen::VectorXd& phi2,
                                  const std::vector<double>& times);
// convenience: both vectors = normalized level-j vacuum state (first sublevel)
Eigen::VectorXd vacuum_state(const ToyModel& model, int sublevel_of_j = 0);

struct FeshbachData {
  std::complex<double> z;
  std::vector<int> p_indices;  // basis indices spanning ran P
  Eigen::MatrixXcd f;          // Feshbach operator on ran P
};

// F(z) = P(H-z)P - P W Pbar [Pbar(H-z)Pbar]^{-1} Pbar W P. P projects onto
// the level-j vacuum block plus one-photon states of level j with omega <= rho0.
FeshbachData feshbach_operator(const ToyModel& model, std::complex<double> z, double rho0);

// Residual of the full resolvent reconstruction (three-term identity) against
// a direct dense solve, maximized over phi1/phi2 and a set of random vectors.
double resolvent_identity_check(const ToyModel& model, std::complex<double> z,
                                const Eigen::VectorXcd& phi1, const Eigen::VectorXcd& phi2,
                                unsigned seed = 1);

// Golden-rule matrix on the level-j sublevels:
// Z_ab = sum_{i<j} [ PV int |G|^2/(E_i - E_j + w) dw + i pi |G(w*)|^2 ] c_a c_v c_b c_v
//        + sum_{v in j} c_a c_v c_b c_v int |G|^2/w dw.
Eigen::MatrixXcd z_matrix_toy(const ToyModel& model);

struct PoleResult {
  std::complex<double> z;
  int iterations = 0;
  double residual = 0;
  std::vector<std::complex<double>> trajectory;
};

// Zero of E_j - z - g^2 Q0^II(z) on the second sheet (Newton iteration,
// started at E_j - i g^2 Im Z_toy). Requires a nondegenerate level j.
PoleResult resonance_pole(const ToyModel& model, double g);

struct CorollaryRow {
  double g;
  double survival;   // |A(s = tau/g^2)|
  double predicted;  // e^{-tau Im Gamma}
  double deviation;
};

std::vector<CorollaryRow> corollary_limit_check(const ToyModel& model, double tau,
                                                const std::vector<double>& g_list);

// Least-squares slope of log|A(s)| over s in [0.1, 0.5]/(g^2 ImZ); returns the
// fitted decay rate (positive).
double fitted_decay_rate(const ToyModel& model);

// Max reconstruction residual over `count` random small models (D <= 50).
double feshbach_random_check(unsigned seed, int count, std::string* detail = nullptr);

std::string survival_to_csv(const SurvivalSeries& s);

}  // namespace hz

#endif
