// Acceptance suite: one PASS/FAIL line per acceptance criterion, nonzero exit
// on any failure. Exercises the shared-library C API and the installed CLI
// (path in the HZ_CLI environment variable).
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "hydrogenz.h"
#include "hydrogen.hpp"
#include "linewidth.hpp"
#include "toymodel.hpp"

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string run_cli(const std::string& args, int* exit_code = nullptr) {
  const char* cli = std::getenv("HZ_CLI");
  if (!cli) return "";
  std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "";
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int rc = pclose(p);
  if (exit_code) *exit_code = WEXITSTATUS(rc);
  return out;
}

bool close6(double v, double expect) {
  return std::abs(v - expect) <= 5e-6 * std::abs(expect);
}

// ---- criteria ------------------------------------------------------------

void criterion_imz_exact_cli() {
  int rc = -1;
  std::string out = run_cli("imz --n 3 --format exact", &rc);
  bool ok = rc == 0;
  // expected diagonal, in (l,m) order: s once, p three times, d five times
  hz::ImZMatrix m = hz::im_z_matrix(3, hz::CutoffKind::One);
  ok = ok && m.exact[0][0] == hz::make_rational(192, 1953125);
  for (int i = 1; i <= 3; ++i) ok = ok && m.exact[i][i] == hz::make_rational(738423, 250000000);
  for (int i = 4; i <= 8; ++i) ok = ok && m.exact[i][i] == hz::make_rational(49152, 48828125);
  for (size_t a = 0; a < m.dim(); ++a)
    for (size_t b = 0; b < m.dim(); ++b)
      if (a != b) ok = ok && m.exact[a][b] == 0;
  // the CLI must print the same exact strings
  ok = ok && out.find("192/1953125") != std::string::npos;
  ok = ok && out.find("738423/250000000") != std::string::npos;
  ok = ok && out.find("49152/48828125") != std::string::npos;
  report("imz-n3-exact-rationals", ok);
}

void criterion_lifetimes_n3() {
  hz::LinewidthReport r =
      hz::lifetimes(hz::im_z_matrix(3, hz::CutoffKind::One), hz::PhysicalConstants{});
  bool ok = close6(r.lifetimes[0].tau_seconds, 1.58303e-7) &&   // 3s
            close6(r.lifetimes[1].tau_seconds, 5.26860e-9) &&   // 3p
            close6(r.lifetimes[4].tau_seconds, 1.54593e-8);     // 3d
  report("lifetimes-n3-six-digits", ok);
}

void criterion_spectrum_n2() {
  auto spectrum = hz::diagonalize(hz::im_z_matrix(2, hz::CutoffKind::One));
  bool ok = spectrum.size() == 2 && spectrum[0].value == 0 && spectrum[0].multiplicity == 1 &&
            spectrum[1].value == hz::make_rational(64, 6561) && spectrum[1].multiplicity == 3;
  hz::LinewidthReport r =
      hz::lifetimes(hz::im_z_matrix(2, hz::CutoffKind::One), hz::PhysicalConstants{});
  ok = ok && r.lifetimes[0].infinite;
  ok = ok && std::abs(r.lifetimes[1].tau_seconds - 1.60e-9) < 0.005e-9;
  report("spectrum-n2-zero-and-64-6561", ok);
}

void criterion_gordon_closed_form() {
  bool ok = true;
  for (int n = 1; n <= 8; ++n) {
    if (n == 2) continue;
    hz::ExactScalar direct = hz::gordon_radial_integral(2, 1, n, 0);
    hz::ExactScalar closed = hz::gordon_closed_form_21_n0(n);
    ok = ok && direct.square() == closed.square();
  }
  report("gordon-closed-form-squares", ok);
}

void criterion_selection_and_commutator() {
  bool ok = true;
  hz::ExactScalar half(hz::make_rational(1, 2));
  for (int n = 1; n <= 5 && ok; ++n) {
    for (int np = 1; np <= 5 && ok; ++np) {
      hz::Rational de = hz::energy(np) - hz::energy(n);
      for (const hz::Orbital& a : hz::level_basis(n)) {
        for (const hz::Orbital& b : hz::level_basis(np)) {
          for (hz::Axis ax : {hz::Axis::X, hz::Axis::Y, hz::Axis::Z}) {
            hz::ExactComplex x = hz::dipole_element(b, ax, a);
            int dl = b.l - a.l, dm = b.m - a.m;
            bool allowed = (dl == 1 || dl == -1) &&
                           (ax == hz::Axis::Z ? dm == 0 : (dm == 1 || dm == -1));
            if (!allowed && !x.is_zero()) ok = false;
            // [H, x] = -2ip: p = i (E_b - E_a)/2 x, exactly
            hz::ExactComplex p = hz::momentum_element(b, ax, a);
            hz::ExactComplex factor(hz::ExactScalar(), half * hz::ExactScalar(de));
            if (!(p == factor * x)) ok = false;
          }
        }
      }
    }
  }
  report("selection-rules-and-commutator", ok);
}

void criterion_forms_agree() {
  bool ok = true;
  for (int n = 1; n <= 5; ++n) {
    hz::ImZMatrix a = hz::im_z_matrix(n, hz::CutoffKind::One);
    hz::ImZMatrix b = hz::im_z_momentum_form(n, hz::CutoffKind::One);
    for (size_t i = 0; i < a.dim(); ++i)
      for (size_t k = 0; k < a.dim(); ++k)
        if (!(a.exact[i][k] == b.exact[i][k])) ok = false;
  }
  report("position-equals-momentum-form", ok);
}

void criterion_positivity() {
  bool ok = true;
  for (int n = 3; n <= 5; ++n)
    for (const auto& ev : hz::diagonalize(hz::im_z_matrix(n, hz::CutoffKind::One)))
      if (!(ev.value > 0)) ok = false;
  int zero_dim = 0;
  for (const auto& ev : hz::diagonalize(hz::im_z_matrix(2, hz::CutoffKind::One)))
    if (ev.value == 0) zero_dim += ev.multiplicity;
  ok = ok && zero_dim == 1;
  report("imz-positivity", ok);
}

void criterion_feshbach_random() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 1.0;
  char* detail = nullptr;
  hz_status st = hz_feshbach_check(987654321u, 100, &worst, &detail);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = st == HZ_OK && worst < 1e-10 && secs < 30.0;
  char note[128];
  std::snprintf(note, sizeof note, "max residual %.3e in %.1f s", worst, secs);
  if (detail) hz_string_free(detail);
  report("feshbach-random-models", ok, note);
}

void criterion_decay_law() {
  auto t0 = std::chrono::steady_clock::now();
  hz::ToyModel m = hz::build_model(hz::ToyConfig::from_string(
      "levels = -0.25, -0.0625\ngrid = tanh\nK = 400\ng = 0.05\n"));
  Eigen::MatrixXcd zm = hz::z_matrix_toy(m);
  double expected = m.cfg.g * m.cfg.g * zm(0, 0).imag();
  double rate = hz::fitted_decay_rate(m);
  bool fit_ok = std::abs(rate - expected) / expected < 0.02;

  std::vector<double> gs = {0.1, 0.05, 0.025};
  std::vector<double> errs;
  bool pole_ok = true;
  for (double g : gs) {
    hz::PoleResult p = hz::resonance_pole(m, g);
    pole_ok = pole_ok && p.residual < 1e-12 && p.z.imag() < 0;
    std::complex<double> first_order(-0.0625 - g * g * zm(0, 0).real(),
                                     -g * g * zm(0, 0).imag());
    errs.push_back(std::abs(p.z - first_order) / (g * g));
  }
  pole_ok = pole_ok && errs[1] < errs[0] && errs[2] < errs[1];

  auto rows = hz::corollary_limit_check(m, 1.0, gs);
  bool cor_ok = rows.size() == 3 && rows[1].deviation < rows[0].deviation &&
                rows[2].deviation < rows[1].deviation;

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = fit_ok && pole_ok && cor_ok && secs < 120.0;
  char note[160];
  std::snprintf(note, sizeof note,
                "fit %s, pole-trend %s, corollary %s, %.1f s",
                fit_ok ? "ok" : "off", pole_ok ? "ok" : "off", cor_ok ? "ok" : "off", secs);
  report("decay-law-small-coupling", ok, note);
}

void criterion_determinism() {
  std::string a = run_cli("imz --n 3 --format exact");
  std::string b = run_cli("imz --n 3 --format exact");
  bool ok = !a.empty() && a == b;
  hz_model *m1 = nullptr, *m2 = nullptr;
  unsigned long long c1 = 0, c2 = 1;
  ok = ok && hz_model_create(nullptr, &m1) == HZ_OK &&
       hz_model_create(nullptr, &m2) == HZ_OK &&
       hz_model_checksum(m1, &c1) == HZ_OK && hz_model_checksum(m2, &c2) == HZ_OK &&
       c1 == c2;
  char *s1 = nullptr, *s2 = nullptr;
  ok = ok && hz_survival_csv(m1, 20.0, 64, &s1) == HZ_OK &&
       hz_survival_csv(m2, 20.0, 64, &s2) == HZ_OK && std::strcmp(s1, s2) == 0;
  if (s1) hz_string_free(s1);
  if (s2) hz_string_free(s2);
  hz_model_free(m1);
  hz_model_free(m2);
  report("byte-identical-determinism", ok);
}

}  // namespace

int main() {
  criterion_imz_exact_cli();
  criterion_lifetimes_n3();
  criterion_spectrum_n2();
  criterion_gordon_closed_form();
  criterion_selection_and_commutator();
  criterion_forms_agree();
  criterion_positivity();
  criterion_feshbach_random();
  criterion_decay_law();
  criterion_determinism();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
