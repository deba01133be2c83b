#include "hydrogenz.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../core/hydrogen.hpp"
#include "../core/linewidth.hpp"
#include "../core/toymodel.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

hz_status fail(hz_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

template <typename Fn>
hz_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(HZ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::logic_error& e) {
    return fail(HZ_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    std::string what = e.what();
    if (what.find("cannot open") != std::string::npos ||
        what.find("config") != std::string::npos)
      return fail(HZ_ERR_IO, what);
    return fail(HZ_ERR_NUMERICAL, what);
  } catch (const std::exception& e) {
    return fail(HZ_ERR_NUMERICAL, e.what());
  }
}

nlohmann::json scalar_json(const hz::ExactScalar& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.terms())
    terms.push_back({{"coeff", hz::to_string(t.coeff)}, {"radicand", t.radicand.get_str()}});
  return {{"terms", terms}, {"text", s.to_string()}, {"value", s.to_double()}};
}

nlohmann::json complex_json(const hz::ExactComplex& v) {
  return {{"re", scalar_json(v.re)}, {"im", scalar_json(v.im)}, {"text", v.to_string()}};
}

}  // namespace

struct hz_model {
  hz::ToyModel model;
};

extern "C" {

const char* hz_version(void) { return "1.0.0"; }

const char* hz_last_error_message(void) { return g_last_error.c_str(); }

void hz_string_free(char* s) { std::free(s); }

const char* hz_conventions(void) {
  return "imz-prefactor=2/3 phases=condon-shortley units=4Ry,bohr/2 "
         "momentum-identity=[x,H]=2ip";
}

hz_status hz_energy(int n, char** out) {
  return guarded([&]() {
    *out = dup_string(hz::to_string(hz::energy(n)));
    return HZ_OK;
  });
}

hz_status hz_radial(int n, int l, double r, char** out_json) {
  return guarded([&]() {
    hz::RadialFunction rf = hz::radial(n, l);
    nlohmann::json j;
    j["n"] = n;
    j["l"] = l;
    j["prefactor"] = scalar_json(rf.prefactor);
    j["polynomial"] = rf.poly.to_string();
    j["degree"] = rf.poly.degree();
    j["exponent_rate"] = hz::to_string(rf.rate);
    j["norm_integral"] = hz::to_string(hz::radial_norm_integral(n, l).rational_value());
    if (r >= 0) j["value_at_r"] = rf.evaluate(r);
    *out_json = dup_string(j.dump(2));
    return HZ_OK;
  });
}

hz_status hz_dipole(int n1, int l1, int m1, char axis, int n2, int l2, int m2,
                    char** out_json) {
  return guarded([&]() {
    hz::Orbital src(n1, l1, m1), tgt(n2, l2, m2);
    hz::ExactComplex v = hz::dipole_element(tgt, hz::axis_from_char(axis), src);
    nlohmann::json j = complex_json(v);
    j["from"] = {n1, l1, m1};
    j["to"] = {n2, l2, m2};
    j["axis"] = std::string(1, axis);
    *out_json = dup_string(j.dump(2));
    return HZ_OK;
  });
}

hz_status hz_momentum(int n1, int l1, int m1, char axis, int n2, int l2, int m2,
                      char** out_json) {
  return guarded([&]() {
    hz::Orbital src(n1, l1, m1), tgt(n2, l2, m2);
    hz::ExactComplex v = hz::momentum_element(tgt, hz::axis_from_char(axis), src);
    nlohmann::json j = complex_json(v);
    j["from"] = {n1, l1, m1};
    j["to"] = {n2, l2, m2};
    j["axis"] = std::string(1, axis);
    *out_json = dup_string(j.dump(2));
    return HZ_OK;
  });
}

hz_status hz_gordon(int n1, int l1, int n2, int l2, char** out_json) {
  return guarded([&]() {
    hz::ExactScalar v = hz::gordon_radial_integral(n1, l1, n2, l2);
    nlohmann::json j = scalar_json(v);
    j["n1"] = n1;
    j["l1"] = l1;
    j["n2"] = n2;
    j["l2"] = l2;
    *out_json = dup_string(j.dump(2));
    return HZ_OK;
  });
}

hz_status hz_dipole_table(int from_level, int to_level, char** out_json) {
  return guarded([&]() {
    *out_json = dup_string(hz::dipole_table_to_json(hz::dipole_table(from_level, to_level)));
    return HZ_OK;
  });
}

hz_status hz_imz(int n, const char* kappa, const char* format, char** out) {
  return guarded([&]() {
    hz::CutoffKind k = hz::cutoff_from_string(kappa ? kappa : "one");
    hz::ImZMatrix m = hz::im_z_matrix(n, k);
    std::string fmt = format ? format : "exact";
    if (fmt == "exact") *out = dup_string(hz::im_z_to_exact_text(m));
    else if (fmt == "csv") *out = dup_string(hz::im_z_to_csv(m));
    else if (fmt == "json") *out = dup_string(hz::im_z_to_json(m));
    else throw std::invalid_argument("imz format must be exact, csv, or json");
    return HZ_OK;
  });
}

hz_status hz_lifetimes(int n, const char* constants_path, const char* format, char** out) {
  return guarded([&]() {
    hz::PhysicalConstants c;
    if (constants_path && *constants_path) c = hz::constants_from_file(constants_path);
    hz::LinewidthReport r = hz::lifetimes(hz::im_z_matrix(n, hz::CutoffKind::One), c);
    std::string fmt = format ? format : "text";
    if (fmt == "text") *out = dup_string(hz::report_to_text(r));
    else if (fmt == "csv") *out = dup_string(hz::report_to_csv(r));
    else throw std::invalid_argument("lifetimes format must be text or csv");
    return HZ_OK;
  });
}

static const char kDefaultConfig[] =
    "levels = -0.25, -0.0625\n"
    "grid = tanh\n"
    "K = 400\n"
    "g = 0.05\n";

hz_status hz_model_create(const char* config_text, hz_model** out) {
  return guarded([&]() {
    std::string text = (config_text && *config_text) ? config_text : kDefaultConfig;
    auto* m = new hz_model{hz::build_model(hz::ToyConfig::from_string(text))};
    *out = m;
    return HZ_OK;
  });
}

hz_status hz_model_create_from_file(const char* path, hz_model** out) {
  return guarded([&]() {
    auto* m = new hz_model{hz::build_model(hz::ToyConfig::from_file(path))};
    *out = m;
    return HZ_OK;
  });
}

void hz_model_free(hz_model* m) { delete m; }

hz_status hz_model_dimension(const hz_model* m, int* out) {
  if (!m) return fail(HZ_ERR_INVALID_ARGUMENT, "null model");
  *out = m->model.dim;
  return HZ_OK;
}

hz_status hz_model_checksum(const hz_model* m, unsigned long long* out) {
  if (!m) return fail(HZ_ERR_INVALID_ARGUMENT, "null model");
  *out = m->model.checksum();
  return HZ_OK;
}

hz_status hz_survival_csv(const hz_model* m, double s_max, int samples, char** out_csv) {
  return guarded([&]() {
    if (!m) throw std::invalid_argument("null model");
    if (samples < 2) throw std::invalid_argument("samples must be >= 2");
    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i) times[i] = s_max * i / (samples - 1);
    Eigen::VectorXd phi = hz::vacuum_state(m->model);
    hz::SurvivalSeries s = hz::survival_amplitude(m->model, phi, phi, times);
    *out_csv = dup_string(hz::survival_to_csv(s));
    return HZ_OK;
  });
}

hz_status hz_zmatrix(const hz_model* m, char** out_text) {
  return guarded([&]() {
    if (!m) throw std::invalid_argument("null model");
    Eigen::MatrixXcd z = hz::z_matrix_toy(m->model);
    std::ostringstream os;
    os << "# toy-model Z matrix (g-independent; enters as g^2 Z)\n";
    for (int a = 0; a < z.rows(); ++a) {
      for (int b = 0; b < z.cols(); ++b)
        os << (b ? " " : "") << z(a, b).real() << (z(a, b).imag() >= 0 ? "+" : "")
           << z(a, b).imag() << "i";
      os << "\n";
    }
    *out_text = dup_string(os.str());
    return HZ_OK;
  });
}

hz_status hz_pole(const hz_model* m, double g, char** out_text) {
  return guarded([&]() {
    if (!m) throw std::invalid_argument("null model");
    double gg = g < 0 ? m->model.cfg.g : g;
    hz::PoleResult p = hz::resonance_pole(m->model, gg);
    std::ostringstream os;
    os.precision(15);
    os << "g = " << gg << "\npole = " << p.z.real() << " " << p.z.imag() << "i\n"
       << "iterations = " << p.iterations << "\nresidual = " << p.residual << "\n"
       << "trajectory:\n";
    for (auto t : p.trajectory) os << "  " << t.real() << " " << t.imag() << "i\n";
    *out_text = dup_string(os.str());
    return HZ_OK;
  });
}

hz_status hz_corollary_csv(const hz_model* m, double tau, const double* g_list, int n_g,
                           char** out_csv) {
  return guarded([&]() {
    if (!m) throw std::invalid_argument("null model");
    std::vector<double> gs(g_list, g_list + n_g);
    auto rows = hz::corollary_limit_check(m->model, tau, gs);
    std::ostringstream os;
    os << "g,survival,predicted,deviation\n";
    char buf[160];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.6g,%.12e,%.12e,%.12e\n", r.g, r.survival,
                    r.predicted, r.deviation);
      os << buf;
    }
    *out_csv = dup_string(os.str());
    return HZ_OK;
  });
}

hz_status hz_feshbach_check(unsigned seed, int count, double* max_residual,
                            char** out_text) {
  return guarded([&]() {
    std::string detail;
    double res = hz::feshbach_random_check(seed, count, out_text ? &detail : nullptr);
    if (max_residual) *max_residual = res;
    if (out_text) *out_text = dup_string(detail);
    return HZ_OK;
  });
}

}  // extern "C"
