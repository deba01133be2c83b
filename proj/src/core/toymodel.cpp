#include "toymodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hz {

using cd = std::complex<double>;

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    out.push_back(v);
  }
  return out;
}

[[noreturn]] void config_error(int line_no, const std::string& msg) {
  throw std::runtime_error("config error, line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

ToyConfig ToyConfig::from_string(const std::string& text) {
  ToyConfig cfg;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) config_error(line_no, "expected key=value");
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    val.erase(0, val.find_first_not_of(" \t"));
    val.erase(val.find_last_not_of(" \t\r") + 1);
    try {
      if (key == "levels") cfg.levels = parse_list(val);
      else if (key == "degeneracy") {
        cfg.degeneracy.clear();
        for (double d : parse_list(val)) cfg.degeneracy.push_back(static_cast<int>(d));
      } else if (key == "couple") cfg.couple_scale = parse_list(val);
      else if (key == "j") cfg.j = std::stoi(val);
      else if (key == "grid") cfg.grid = val;
      else if (key == "K") cfg.K = std::stoi(val);
      else if (key == "omega_max") cfg.omega_max = std::stod(val);
      else if (key == "g") cfg.g = std::stod(val);
      else if (key == "coupling_const") cfg.coupling_const = std::stod(val);
      else if (key == "coupling_pow") cfg.coupling_pow = std::stod(val);
      else if (key == "coupling_decay") cfg.coupling_decay = std::stod(val);
      else config_error(line_no, "unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      config_error(line_no, "cannot parse value '" + val + "'");
    }
  }
  return cfg;
}

ToyConfig ToyConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_string(ss.str());
}

std::string ToyConfig::to_string() const {
  std::ostringstream os;
  os << "levels = ";
  for (size_t i = 0; i < levels.size(); ++i) os << (i ? "," : "") << levels[i];
  os << "\ndegeneracy = ";
  for (size_t i = 0; i < degeneracy.size(); ++i) os << (i ? "," : "") << degeneracy[i];
  os << "\nj = " << j << "\ngrid = " << grid << "\nK = " << K
     << "\nomega_max = " << omega_max << "\ng = " << g
     << "\ncoupling_const = " << coupling_const << "\ncoupling_pow = " << coupling_pow
     << "\ncoupling_decay = " << coupling_decay << "\n";
  return os.str();
}

double ToyModel::amplitude(double omega) const {
  if (omega <= 0) return 0;
  return cfg.coupling_const * std::pow(omega, cfg.coupling_pow) *
         std::exp(-cfg.coupling_decay * omega * omega);
}

std::complex<double> ToyModel::amplitude_sq_analytic(std::complex<double> omega) const {
  double c2 = cfg.coupling_const * cfg.coupling_const;
  return c2 * std::pow(omega, 2.0 * cfg.coupling_pow) *
         std::exp(-2.0 * cfg.coupling_decay * omega * omega);
}

int ToyModel::sublevel_offset(int level) const {
  int off = 0;
  for (int i = 0; i < level; ++i) off += cfg.degeneracy[i];
  return off;
}

int ToyModel::level_of_sublevel(int s) const {
  int off = 0;
  for (size_t i = 0; i < cfg.degeneracy.size(); ++i) {
    off += cfg.degeneracy[i];
    if (s < off) return static_cast<int>(i);
  }
  throw std::logic_error("level_of_sublevel: index out of range");
}

unsigned long long ToyModel::checksum() const {
  Eigen::MatrixXd h = hamiltonian();
  unsigned long long hash = 1469598103934665603ULL;
  auto mix = [&hash](const void* p, size_t len) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < len; ++i) {
      hash ^= b[i];
      hash *= 1099511628211ULL;
    }
  };
  int d = dim;
  mix(&d, sizeof d);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      double v = h(i, k);
      mix(&v, sizeof v);
    }
  return hash;
}

ToyModel build_model(const ToyConfig& cfg_in) {
  ToyConfig cfg = cfg_in;
  if (cfg.levels.size() < 1) throw std::invalid_argument("build_model: need at least one level");
  for (size_t i = 1; i < cfg.levels.size(); ++i)
    if (cfg.levels[i] <= cfg.levels[i - 1])
      throw std::invalid_argument("build_model: levels must be strictly increasing");
  if (cfg.degeneracy.empty()) cfg.degeneracy.assign(cfg.levels.size(), 1);
  if (cfg.degeneracy.size() != cfg.levels.size())
    throw std::invalid_argument("build_model: degeneracy list length mismatch");
  for (int d : cfg.degeneracy)
    if (d < 1) throw std::invalid_argument("build_model: degeneracy must be >= 1");
  if (cfg.g < 0) throw std::invalid_argument("build_model: g must be >= 0");
  if (cfg.K < 0) throw std::invalid_argument("build_model: K must be >= 0");
  if (cfg.j < 0) cfg.j = static_cast<int>(cfg.levels.size()) - 1;
  if (cfg.j >= static_cast<int>(cfg.levels.size()))
    throw std::invalid_argument("build_model: j out of range");

  int n_vac = 0;
  for (int d : cfg.degeneracy) n_vac += d;
  if (cfg.couple_scale.empty()) cfg.couple_scale.assign(n_vac, 1.0);
  if (static_cast<int>(cfg.couple_scale.size()) != n_vac)
    throw std::invalid_argument("build_model: couple list must have one entry per sublevel");

  double omega_star = cfg.levels[cfg.j] - cfg.levels[0];
  if (cfg.omega_max <= 0) cfg.omega_max = omega_star > 0 ? 10.0 * omega_star : 2.0;

  ToyModel m;
  m.cfg = cfg;
  m.n_vac = n_vac;

  // continuum grid
  if (cfg.K > 0) {
    m.nodes.resize(cfg.K);
    m.weights.resize(cfg.K);
    if (cfg.grid == "linear") {
      double dw = cfg.omega_max / cfg.K;
      for (int k = 0; k < cfg.K; ++k) {
        m.nodes[k] = (k + 0.5) * dw;
        m.weights[k] = dw;
      }
    } else if (cfg.grid == "tanh" || cfg.grid == "stretched") {
      // nodes concentrated near omega_star via a sinh stretch
      double beta = 10.0;
      double target = omega_star > 0 && omega_star < cfg.omega_max ? omega_star
                                                                   : 0.5 * cfg.omega_max;
      // solve sinh(beta(1-t0))/sinh(beta t0) = (omega_max-target)/target
      double ratio = (cfg.omega_max - target) / target;
      double lo = 1e-9, hi = 1 - 1e-9;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double r = std::sinh(beta * (1 - mid)) / std::sinh(beta * mid);
        (r > ratio ? lo : hi) = mid;
      }
      double t0 = 0.5 * (lo + hi);
      double amp = target / std::sinh(beta * t0);
      for (int k = 0; k < cfg.K; ++k) {
        double t = (k + 0.5) / cfg.K;
        m.nodes[k] = target + amp * std::sinh(beta * (t - t0));
        m.weights[k] = amp * beta * std::cosh(beta * (t - t0)) / cfg.K;
      }
    } else {
      throw std::invalid_argument("build_model: unknown grid kind '" + cfg.grid + "'");
    }
    for (int k = 0; k < cfg.K; ++k) {
      if (m.nodes[k] <= 0 || (k > 0 && m.nodes[k] <= m.nodes[k - 1]))
        throw std::invalid_argument("build_model: grid not strictly increasing and positive");
      if (m.weights[k] <= 0) throw std::invalid_argument("build_model: nonpositive weight");
    }
  } else {
    m.no_continuum = true;
  }

  m.dim = n_vac * (1 + cfg.K);
  m.h0 = Eigen::MatrixXd::Zero(m.dim, m.dim);
  m.w = Eigen::MatrixXd::Zero(m.dim, m.dim);

  auto photon_index = [&](int sublevel, int k) { return n_vac + sublevel * cfg.K + k; };

  for (int s = 0; s < n_vac; ++s) {
    double e = cfg.levels[m.level_of_sublevel(s)];
    m.h0(s, s) = e;
    for (int k = 0; k < cfg.K; ++k) m.h0(photon_index(s, k), photon_index(s, k)) = e + m.nodes[k];
  }
  for (int u = 0; u < n_vac; ++u) {
    for (int v = 0; v < n_vac; ++v) {
      double cuv = cfg.couple_scale[u] * cfg.couple_scale[v];
      if (cuv == 0) continue;
      for (int k = 0; k < cfg.K; ++k) {
        double amp = std::sqrt(m.weights[k]) * m.amplitude(m.nodes[k]) * cuv;
        m.w(u, photon_index(v, k)) += amp;
        m.w(photon_index(v, k), u) += amp;
      }
    }
  }
  return m;
}

Eigen::VectorXd vacuum_state(const ToyModel& model, int sublevel_of_j) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(model.dim);
  v(model.j_offset() + sublevel_of_j) = 1.0;
  return v;
}

SurvivalSeries survival_amplitude(const ToyModel& model, const Eigen::VectorXd& phi1,
                                  const Eigen::VectorXd& phi2,
                                  const std::vector<double>& times) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.hamiltonian());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("survival_amplitude: eigendecomposition failed");
  Eigen::VectorXd a = es.eigenvectors().transpose() * phi1;
  Eigen::VectorXd b = es.eigenvectors().transpose() * phi2;
  const Eigen::VectorXd& lam = es.eigenvalues();
  SurvivalSeries out;
  out.times = times;
  out.values.reserve(times.size());
  for (double s : times) {
    cd acc = 0;
    for (int i = 0; i < lam.size(); ++i)
      acc += a(i) * b(i) * std::exp(cd(0, -s * lam(i)));
    out.values.push_back(acc);
  }
  return out;
}

namespace {

// adaptive Simpson for smooth complex integrands
cd simpson_rec(const std::function<cd(double)>& f, double a, double b, cd fa, cd fm, cd fb,
               cd whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  cd flm = f(lm), frm = f(rm);
  cd left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  cd right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  cd sum = left + right;
  if (depth <= 0 || std::abs(sum - whole) < 15 * tol) return sum + (sum - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

cd integrate_smooth(const std::function<cd(double)>& f, double a, double b,
                    double tol = 1e-12) {
  if (a == b) return 0;
  // split at a few interior points to seed adaptivity
  int pieces = 8;
  cd total = 0;
  for (int i = 0; i < pieces; ++i) {
    double x0 = a + (b - a) * i / pieces;
    double x1 = a + (b - a) * (i + 1) / pieces;
    double m = 0.5 * (x0 + x1);
    cd f0 = f(x0), fm = f(m), f1 = f(x1);
    cd whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += simpson_rec(f, x0, x1, f0, fm, f1, whole, tol / pieces, 40);
  }
  return total;
}

double integrate_smooth_real(const std::function<double(double)>& f, double a, double b) {
  return integrate_smooth([&](double x) { return cd(f(x), 0); }, a, b).real();
}

// PV int_a^b f(w)/(w - w0) dw with w0 strictly inside (a,b), f smooth.
double pv_integral(const std::function<double(double)>& f, double a, double b, double w0) {
  double f0 = f(w0);
  double h = 1e-6 * (1 + std::abs(w0));
  double fp0 = (f(w0 + h) - f(w0 - h)) / (2 * h);
  auto g = [&](double w) {
    double d = w - w0;
    if (std::abs(d) < 1e-9 * (1 + std::abs(w0))) return fp0;
    return (f(w) - f0) / d;
  };
  return integrate_smooth_real(g, a, b) + f0 * std::log((b - w0) / (w0 - a));
}

}  // namespace

Eigen::MatrixXcd z_matrix_toy(const ToyModel& model) {
  const ToyConfig& cfg = model.cfg;
  int dj = model.dj();
  int joff = model.j_offset();
  double ej = cfg.levels[cfg.j];
  double wmax = cfg.omega_max;
  auto f = [&](double w) {
    double a = model.amplitude(w);
    return a * a;
  };
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(dj, dj);

  // channel factor sum_{v in level i} c_v^2, common rank-one structure
  auto channel_weight = [&](int level) {
    double s = 0;
    int off = model.sublevel_offset(level);
    for (int v = 0; v < cfg.degeneracy[level]; ++v)
      s += cfg.couple_scale[off + v] * cfg.couple_scale[off + v];
    return s;
  };

  for (size_t i = 0; i < cfg.levels.size(); ++i) {
    if (static_cast<int>(i) == cfg.j) continue;
    double wstar = ej - cfg.levels[i];
    cd q;
    if (wstar > 0) {
      if (wstar >= wmax)
        throw std::runtime_error("z_matrix_toy: resonant frequency outside grid support");
      q = cd(pv_integral(f, 0, wmax, wstar), M_PI * f(wstar));
    } else {
      q = integrate_smooth([&](double w) { return cd(f(w) / (w - wstar), 0); }, 0, wmax);
    }
    double cw = channel_weight(static_cast<int>(i));
    for (int a = 0; a < dj; ++a)
      for (int b = 0; b < dj; ++b)
        z(a, b) += q * cw * cfg.couple_scale[joff + a] * cfg.couple_scale[joff + b];
  }
  // diagonal part: intermediate states within level j, int |G|^2 / w dw
  {
    double d_int = integrate_smooth_real([&](double w) { return w > 0 ? f(w) / w : 0.0; },
                                         0, wmax);
    double cw = channel_weight(cfg.j);
    for (int a = 0; a < dj; ++a)
      for (int b = 0; b < dj; ++b)
        z(a, b) += d_int * cw * cfg.couple_scale[joff + a] * cfg.couple_scale[joff + b];
  }
  return z;
}

FeshbachData feshbach_operator(const ToyModel& model, std::complex<double> z, double rho0) {
  const ToyConfig& cfg = model.cfg;
  std::vector<int> p_idx, q_idx;
  int joff = model.j_offset();
  int dj = model.dj();
  std::vector<bool> in_p(model.dim, false);
  for (int a = 0; a < dj; ++a) in_p[joff + a] = true;
  if (cfg.K > 0 && rho0 > 0) {
    for (int a = 0; a < dj; ++a)
      for (int k = 0; k < cfg.K && model.nodes[k] <= rho0; ++k)
        in_p[model.n_vac + (joff + a) * cfg.K + k] = true;
  }
  for (int i = 0; i < model.dim; ++i) (in_p[i] ? p_idx : q_idx).push_back(i);

  Eigen::MatrixXd h = model.hamiltonian();
  int np = static_cast<int>(p_idx.size()), nq = static_cast<int>(q_idx.size());
  Eigen::MatrixXcd hpp(np, np), hpq(np, nq), hqq(nq, nq);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) hpp(a, b) = h(p_idx[a], p_idx[b]);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nq; ++b) hpq(a, b) = h(p_idx[a], q_idx[b]);
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b) hqq(a, b) = h(q_idx[a], q_idx[b]);
  Eigen::MatrixXcd bmat = hqq - z * Eigen::MatrixXcd::Identity(nq, nq);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(bmat);
  double bnorm = bmat.cwiseAbs().maxCoeff();
  double umin = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (umin < 1e-13 * bnorm) {
    std::ostringstream os;
    os << "feshbach_operator: restricted block near-singular at z = (" << z.real() << ","
       << z.imag() << ")";
    throw std::runtime_error(os.str());
  }
  Eigen::MatrixXcd solve_wq = lu.solve(hpq.transpose());  // B^{-1} Pbar W P
  FeshbachData out;
  out.z = z;
  out.p_indices = p_idx;
  out.f = hpp - z * Eigen::MatrixXcd::Identity(np, np) - hpq * solve_wq;
  return out;
}

double resolvent_identity_check(const ToyModel& model, std::complex<double> z,
                                const Eigen::VectorXcd& phi1, const Eigen::VectorXcd& phi2,
                                unsigned seed) {
  FeshbachData fd = feshbach_operator(model, z, 0.0);
  int np = static_cast<int>(fd.p_indices.size());
  Eigen::MatrixXd h = model.hamiltonian();
  int n = model.dim;
  Eigen::MatrixXcd hz = h.cast<cd>() - z * Eigen::MatrixXcd::Identity(n, n);
  Eigen::PartialPivLU<Eigen::MatrixXcd> full_lu(hz);

  std::vector<bool> in_p(n, false);
  for (int i : fd.p_indices) in_p[i] = true;
  std::vector<int> q_idx;
  for (int i = 0; i < n; ++i)
    if (!in_p[i]) q_idx.push_back(i);
  int nq = static_cast<int>(q_idx.size());

  Eigen::MatrixXcd hpq(np, nq), hqq(nq, nq);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nq; ++b) hpq(a, b) = h(fd.p_indices[a], q_idx[b]);
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b) hqq(a, b) = h(q_idx[a], q_idx[b]);
  Eigen::MatrixXcd bmat = hqq - z * Eigen::MatrixXcd::Identity(nq, nq);
  Eigen::PartialPivLU<Eigen::MatrixXcd> blu(bmat);
  Eigen::PartialPivLU<Eigen::MatrixXcd> flu(fd.f);

  // left factor L = P - Pbar B^{-1} Pbar W P  (as a dim x np matrix),
  // right factor is its transpose (H real symmetric).
  Eigen::MatrixXcd bw = blu.solve(hpq.transpose());  // nq x np
  Eigen::MatrixXcd lfac = Eigen::MatrixXcd::Zero(n, np);
  for (int a = 0; a < np; ++a) lfac(fd.p_indices[a], a) = 1.0;
  for (int b = 0; b < nq; ++b)
    for (int a = 0; a < np; ++a) lfac(q_idx[b], a) = -bw(b, a);

  auto reconstruct_apply = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd vp(np), vq(nq);
    for (int a = 0; a < np; ++a) vp(a) = v(fd.p_indices[a]);
    for (int b = 0; b < nq; ++b) vq(b) = v(q_idx[b]);
    // right factor applied to v: P v - P W Pbar B^{-1} Pbar v
    Eigen::VectorXcd rv = vp - bw.transpose() * vq;
    Eigen::VectorXcd mid = flu.solve(rv);
    Eigen::VectorXcd out = lfac * mid;
    Eigen::VectorXcd bq = blu.solve(vq);
    for (int b = 0; b < nq; ++b) out(q_idx[b]) += bq(b);
    return out;
  };

  double residual = 0;
  // matrix-element form for vectors in ran P
  {
    cd lhs = phi1.dot(full_lu.solve(phi2));
    Eigen::VectorXcd p2(np);
    for (int a = 0; a < np; ++a) p2(a) = phi2(fd.p_indices[a]);
    Eigen::VectorXcd p1(np);
    for (int a = 0; a < np; ++a) p1(a) = phi1(fd.p_indices[a]);
    cd rhs = p1.dot(flu.solve(p2));
    residual = std::abs(lhs - rhs);
  }
  // full three-term reconstruction on random vectors
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = cd(nd(rng), nd(rng));
    v /= v.norm();
    Eigen::VectorXcd direct = full_lu.solve(v);
    Eigen::VectorXcd recon = reconstruct_apply(v);
    residual = std::max(residual, (direct - recon).norm());
  }
  return residual;
}

namespace {

// Q0 on the second sheet, scalar (nondegenerate level j), unit couplings
// folded in via channel weights.
cd q0_second_sheet(const ToyModel& model, cd z) {
  const ToyConfig& cfg = model.cfg;
  double wmax = cfg.omega_max;
  int joff = model.j_offset();
  double cj = cfg.couple_scale[joff];
  auto f_real = [&](double w) {
    double a = model.amplitude(w);
    return a * a;
  };
  cd total = 0;
  for (size_t i = 0; i < cfg.levels.size(); ++i) {
    double cw = 0;
    int off = model.sublevel_offset(static_cast<int>(i));
    for (int v = 0; v < cfg.degeneracy[i]; ++v)
      cw += cfg.couple_scale[off + v] * cfg.couple_scale[off + v];
    if (cw == 0) continue;
    cd zeta = z - cfg.levels[i];
    cd fz = model.amplitude_sq_analytic(zeta);
    auto integrand = [&](double w) {
      cd d = w - zeta;
      if (std::abs(d) < 1e-9) {
        // removable point; derivative of f at zeta via central difference
        double h = 1e-6;
        return (model.amplitude_sq_analytic(zeta + h) -
                model.amplitude_sq_analytic(zeta - h)) /
               (2 * h);
      }
      return (cd(f_real(w), 0) - fz) / d;
    };
    cd q = integrate_smooth(integrand, 0, wmax) +
           fz * (std::log(cd(wmax, 0) - zeta) - std::log(-zeta));
    // continue through the cut for open channels (pole inside the continuum)
    bool open = static_cast<int>(i) != cfg.j && zeta.real() > 1e-12 && zeta.real() < wmax;
    if (open && zeta.imag() < 0) q += cd(0, 2 * M_PI) * fz;
    total += q * cw * cj * cj;
  }
  return total;
}

}  // namespace

PoleResult resonance_pole(const ToyModel& model, double g) {
  if (model.dj() != 1)
    throw std::invalid_argument("resonance_pole: implemented for nondegenerate level j only");
  double ej = model.cfg.levels[model.cfg.j];
  PoleResult out;
  if (g == 0) {
    out.z = ej;
    out.residual = 0;
    return out;
  }
  Eigen::MatrixXcd zm = z_matrix_toy(model);
  cd z = cd(ej, 0) - cd(0, g * g * zm(0, 0).imag());
  auto func = [&](cd zz) { return cd(ej, 0) - zz - g * g * q0_second_sheet(model, zz); };
  const int max_iter = 50;
  for (int it = 0; it < max_iter; ++it) {
    out.trajectory.push_back(z);
    cd fv = func(z);
    out.residual = std::abs(fv);
    out.iterations = it;
    if (out.residual < 1e-12) {
      out.z = z;
      if (z.imag() >= 0 && g > 0)
        throw std::runtime_error("resonance_pole: converged to Im z >= 0");
      return out;
    }
    double h = 1e-7 * (1 + std::abs(z));
    cd deriv = (func(z + h) - func(z - h)) / (2 * h);
    if (std::abs(deriv) < 1e-14)
      throw std::runtime_error("resonance_pole: vanishing derivative in Newton step");
    z -= fv / deriv;
  }
  std::ostringstream os;
  os << "resonance_pole: Newton did not converge; trajectory:";
  for (cd t : out.trajectory) os << " (" << t.real() << "," << t.imag() << ")";
  throw std::runtime_error(os.str());
}

std::vector<CorollaryRow> corollary_limit_check(const ToyModel& model, double tau,
                                                const std::vector<double>& g_list) {
  if (tau < 0) throw std::invalid_argument("corollary_limit_check: tau must be >= 0");
  Eigen::MatrixXcd zm = z_matrix_toy(model);
  // Gamma: eigenvalue of Z for the chosen state. Nondegenerate j: the scalar.
  // Degenerate j: dominant eigenvector of Z.
  int dj = model.dj();
  Eigen::VectorXcd phi_small;
  cd gamma;
  if (dj == 1) {
    gamma = zm(0, 0);
    phi_small = Eigen::VectorXcd::Ones(1);
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(zm);
    int best = 0;
    for (int i = 1; i < dj; ++i)
      if (es.eigenvalues()(i).imag() > es.eigenvalues()(best).imag()) best = i;
    gamma = es.eigenvalues()(best);
    phi_small = es.eigenvectors().col(best);
    phi_small /= phi_small.norm();
  }
  std::vector<CorollaryRow> rows;
  for (double g : g_list) {
    ToyConfig cfg = model.cfg;
    cfg.g = g;
    ToyModel m = build_model(cfg);
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(m.dim);
    for (int a = 0; a < dj; ++a) phi(m.j_offset() + a) = phi_small(a).real();
    if (phi.norm() == 0) throw std::runtime_error("corollary_limit_check: zero state");
    phi /= phi.norm();
    double s = (g > 0) ? tau / (g * g) : 0.0;
    SurvivalSeries ser = survival_amplitude(m, phi, phi, {s});
    CorollaryRow row;
    row.g = g;
    row.survival = std::abs(ser.values[0]);
    row.predicted = std::exp(-tau * gamma.imag());
    row.deviation = std::abs(row.survival - row.predicted);
    rows.push_back(row);
  }
  return rows;
}

double fitted_decay_rate(const ToyModel& model) {
  Eigen::MatrixXcd zm = z_matrix_toy(model);
  if (model.dj() != 1)
    throw std::invalid_argument("fitted_decay_rate: nondegenerate level j only");
  double imz = zm(0, 0).imag();
  double g = model.cfg.g;
  if (imz <= 0 || g <= 0)
    throw std::invalid_argument("fitted_decay_rate: needs positive g and Im Z");
  double scale = 1.0 / (g * g * imz);
  int npts = 200;
  std::vector<double> times(npts);
  for (int i = 0; i < npts; ++i)
    times[i] = (0.1 + 0.4 * i / (npts - 1)) * scale;
  Eigen::VectorXd phi = vacuum_state(model);
  SurvivalSeries ser = survival_amplitude(model, phi, phi, times);
  // least squares slope of log|A| vs s
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < npts; ++i) {
    double x = times[i], y = std::log(std::abs(ser.values[i]));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
  return -slope;
}

double feshbach_random_check(unsigned seed, int count, std::string* detail) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double max_res = 0;
  std::ostringstream os;
  for (int t = 0; t < count; ++t) {
    ToyConfig cfg;
    int nlev = 2 + static_cast<int>(u01(rng) * 2);  // 2 or 3
    std::vector<double> lev;
    for (int i = 0; i < nlev; ++i) lev.push_back(-1.0 + 0.9 * u01(rng));
    std::sort(lev.begin(), lev.end());
    for (int i = 1; i < nlev; ++i)
      if (lev[i] - lev[i - 1] < 0.05) lev[i] = lev[i - 1] + 0.05;
    cfg.levels = lev;
    int kmax = 50 / nlev - 1;
    cfg.K = 3 + static_cast<int>(u01(rng) * (kmax - 3));
    cfg.grid = "linear";
    cfg.omega_max = 1.0 + 2.0 * u01(rng);
    cfg.g = 0.01 + 0.19 * u01(rng);
    cfg.coupling_const = 0.5 + 1.5 * u01(rng);
    ToyModel m = build_model(cfg);
    double ej = cfg.levels.back();
    double im = (u01(rng) < 0.5 ? -1 : 1) * (0.1 + 0.9 * u01(rng));
    cd z(ej + (u01(rng) - 0.5) * 0.6, im);
    Eigen::VectorXcd phi1 = Eigen::VectorXcd::Zero(m.dim);
    Eigen::VectorXcd phi2 = Eigen::VectorXcd::Zero(m.dim);
    phi1(m.j_offset()) = 1.0;
    phi2(m.j_offset()) = 1.0;
    double res = resolvent_identity_check(m, z, phi1, phi2, seed + 1000 + t);
    max_res = std::max(max_res, res);
    if (detail)
      os << "model " << t << ": D=" << m.dim << " z=(" << z.real() << "," << z.imag()
         << ") residual=" << res << "\n";
  }
  if (detail) {
    os << "max residual: " << max_res << "\n";
    *detail = os.str();
  }
  return max_res;
}

std::string survival_to_csv(const SurvivalSeries& s) {
  std::ostringstream os;
  os << "s,re_a,im_a,abs_a\n";
  char buf[160];
  for (size_t i = 0; i < s.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e\n", s.times[i],
                  s.values[i].real(), s.values[i].imag(), std::abs(s.values[i]));
    os << buf;
  }
  return os.str();
}

}  // namespace hz
