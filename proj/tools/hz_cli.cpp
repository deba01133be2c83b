// hz: command-line front end. Talks to the core exclusively through the
// hydrogenz C API.
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydrogenz.h"

namespace {

int status_to_exit(hz_status st) {
  switch (st) {
    case HZ_OK: return 0;
    case HZ_ERR_INVALID_ARGUMENT: return 2;
    case HZ_ERR_NUMERICAL: return 3;
    case HZ_ERR_IO: return 4;
  }
  return 3;
}

int emit(hz_status st, char* text, const std::string& out_path) {
  if (st != HZ_OK) {
    std::cerr << "error: " << hz_last_error_message() << "\n";
    return status_to_exit(st);
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      hz_string_free(text);
      return 4;
    }
    f << text;
  }
  hz_string_free(text);
  return 0;
}

bool parse_orbital(const std::string& s, int& n, int& l, int& m) {
  return std::sscanf(s.c_str(), "%d,%d,%d", &n, &l, &m) == 3;
}

std::string read_all(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct ModelHolder {
  hz_model* m = nullptr;
  ~ModelHolder() { hz_model_free(m); }
};

int open_model(const std::string& config, ModelHolder& holder) {
  hz_status st = config.empty() ? hz_model_create(nullptr, &holder.m)
                                : hz_model_create_from_file(config.c_str(), &holder.m);
  if (st != HZ_OK) {
    std::cerr << "error: " << hz_last_error_message() << "\n";
    return status_to_exit(st);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hydrogenz: exact hydrogen decay operator and resonance toy model"};
  app.require_subcommand(1);

  // hydrogen
  auto* energies = app.add_subcommand("energies", "bound-state energies, units of 4 Ry");
  int n_max = 3;
  energies->add_option("--n-max", n_max, "highest principal quantum number");

  auto* radial = app.add_subcommand("radial", "exact radial function R_{n,l}");
  int rn = 1, rl = 0;
  double eval_r = -1;
  radial->add_option("--n", rn)->required();
  radial->add_option("--l", rl)->required();
  radial->add_option("--eval", eval_r, "evaluate at r (floating)");

  auto* dipole = app.add_subcommand("dipole", "dipole matrix element");
  std::string from_s, to_s, axis_s = "z";
  bool exact_flag = false;
  dipole->add_option("--from", from_s, "n,l,m")->required();
  dipole->add_option("--to", to_s, "n,l,m")->required();
  dipole->add_option("--axis", axis_s)->check(CLI::IsMember({"x", "y", "z"}));
  dipole->add_flag("--exact", exact_flag, "exact output (default prints both)");

  auto* momentum = app.add_subcommand("momentum", "momentum matrix element");
  std::string mfrom_s, mto_s, maxis_s = "z";
  momentum->add_option("--from", mfrom_s, "n,l,m")->required();
  momentum->add_option("--to", mto_s, "n,l,m")->required();
  momentum->add_option("--axis", maxis_s)->check(CLI::IsMember({"x", "y", "z"}));

  // linewidth
  auto* imz = app.add_subcommand("imz", "decay operator Im Z on level n");
  int imz_n = 3;
  std::string kappa = "one", imz_fmt = "exact";
  imz->add_option("--n", imz_n)->required();
  imz->add_option("--kappa", kappa)->check(CLI::IsMember({"one", "quartic"}));
  imz->add_option("--format", imz_fmt)->check(CLI::IsMember({"exact", "csv", "json"}));

  auto* lt = app.add_subcommand("lifetimes", "SI lifetimes of level n");
  int lt_n = 3;
  std::string constants_file, lt_fmt = "text";
  lt->add_option("--n", lt_n)->required();
  lt->add_option("--constants", constants_file, "key=value constants file");
  lt->add_option("--format", lt_fmt)->check(CLI::IsMember({"text", "csv"}));

  // toy model
  auto* sim = app.add_subcommand("simulate", "toy-model verification bench");
  sim->require_subcommand(1);
  std::string config, out_path;

  auto* surv = sim->add_subcommand("survival", "sampled survival amplitude");
  double s_max = 500;
  int samples = 1000;
  surv->add_option("--config", config);
  surv->add_option("--out", out_path, "output CSV path (default stdout)");
  surv->add_option("--s-max", s_max);
  surv->add_option("--samples", samples);

  auto* pole = sim->add_subcommand("pole", "second-sheet resonance pole");
  double pole_g = -1;
  pole->add_option("--config", config);
  pole->add_option("--g", pole_g, "override coupling strength");

  auto* coro = sim->add_subcommand("corollary", "fixed-tau limit comparison table");
  double tau = 1.0;
  std::string g_list_s = "0.1,0.05,0.025";
  coro->add_option("--config", config);
  coro->add_option("--tau", tau);
  coro->add_option("--g-list", g_list_s, "comma-separated couplings");
  coro->add_option("--out", out_path);

  auto* fesh = sim->add_subcommand("feshbach-check", "resolvent identity on random models");
  unsigned seed = 7;
  int count = 100;
  fesh->add_option("--config", config, "(unused; models are randomly generated)");
  fesh->add_option("--seed", seed);
  fesh->add_option("--count", count);

  auto* zm = sim->add_subcommand("zmatrix", "toy-model Z matrix");
  zm->add_option("--config", config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors map to exit code 2
  }

  std::cerr << "# conventions: " << hz_conventions() << "\n";

  char* text = nullptr;
  if (*energies) {
    if (n_max < 1) {
      std::cerr << "error: --n-max must be >= 1\n";
      return 2;
    }
    std::string all;
    for (int n = 1; n <= n_max; ++n) {
      hz_status st = hz_energy(n, &text);
      if (st != HZ_OK) {
        std::cerr << "error: " << hz_last_error_message() << "\n";
        return status_to_exit(st);
      }
      all += "E_" + std::to_string(n) + " = " + text + "\n";
      hz_string_free(text);
    }
    std::cout << all;
    return 0;
  }
  if (*radial) {
    hz_status st = hz_radial(rn, rl, eval_r, &text);
    return emit(st, text, "");
  }
  if (*dipole || *momentum) {
    bool is_p = static_cast<bool>(*momentum);
    const std::string& fs = is_p ? mfrom_s : from_s;
    const std::string& ts = is_p ? mto_s : to_s;
    const std::string& as = is_p ? maxis_s : axis_s;
    int n1, l1, m1, n2, l2, m2;
    if (!parse_orbital(fs, n1, l1, m1) || !parse_orbital(ts, n2, l2, m2)) {
      std::cerr << "error: orbitals must be given as n,l,m\n";
      return 2;
    }
    hz_status st = is_p ? hz_momentum(n1, l1, m1, as[0], n2, l2, m2, &text)
                        : hz_dipole(n1, l1, m1, as[0], n2, l2, m2, &text);
    return emit(st, text, "");
  }
  if (*imz) {
    hz_status st = hz_imz(imz_n, kappa.c_str(), imz_fmt.c_str(), &text);
    return emit(st, text, "");
  }
  if (*lt) {
    hz_status st = hz_lifetimes(lt_n, constants_file.empty() ? nullptr : constants_file.c_str(),
                                lt_fmt.c_str(), &text);
    return emit(st, text, "");
  }

  if (*surv) {
    ModelHolder h;
    if (int rc = open_model(config, h)) return rc;
    hz_status st = hz_survival_csv(h.m, s_max, samples, &text);
    return emit(st, text, out_path);
  }
  if (*pole) {
    ModelHolder h;
    if (int rc = open_model(config, h)) return rc;
    hz_status st = hz_pole(h.m, pole_g, &text);
    return emit(st, text, "");
  }
  if (*coro) {
    ModelHolder h;
    if (int rc = open_model(config, h)) return rc;
    std::vector<double> gs;
    std::stringstream ss(g_list_s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        gs.push_back(std::stod(tok));
      } catch (...) {
        std::cerr << "error: bad --g-list entry '" << tok << "'\n";
        return 2;
      }
    }
    hz_status st = hz_corollary_csv(h.m, tau, gs.data(), static_cast<int>(gs.size()), &text);
    return emit(st, text, out_path);
  }
  if (*fesh) {
    double max_res = 0;
    hz_status st = hz_feshbach_check(seed, count, &max_res, &text);
    if (st == HZ_OK) {
      std::printf("max residual < 1e-10: %s (%.3e)\n", max_res < 1e-10 ? "yes" : "NO",
                  max_res);
    }
    return emit(st, text, "");
  }
  if (*zm) {
    ModelHolder h;
    if (int rc = open_model(config, h)) return rc;
    hz_status st = hz_zmatrix(h.m, &text);
    return emit(st, text, "");
  }
  return 2;
}
