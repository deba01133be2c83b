#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "hydrogenz.h"

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  hz_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and conventions strings") {
  CHECK(hz_version() != nullptr);
  std::string conv = hz_conventions();
  CHECK(conv.find("2/3") != std::string::npos);
  CHECK(conv.find("condon-shortley") != std::string::npos);
}

TEST_CASE("energy") {
  char* s = nullptr;
  REQUIRE(hz_energy(2, &s) == HZ_OK);
  CHECK(take(s) == "-1/16");
  s = nullptr;
  CHECK(hz_energy(0, &s) == HZ_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(hz_last_error_message()) > 0);
}

TEST_CASE("radial and gordon JSON") {
  char* s = nullptr;
  REQUIRE(hz_radial(2, 1, 1.5, &s) == HZ_OK);
  std::string j = take(s);
  CHECK(j.find("\"n\": 2") != std::string::npos);
  CHECK(j.find("value") != std::string::npos);
  s = nullptr;
  CHECK(hz_radial(1, 1, -1, &s) == HZ_ERR_INVALID_ARGUMENT);
  s = nullptr;
  REQUIRE(hz_gordon(2, 1, 1, 0, &s) == HZ_OK);
  CHECK(take(s).find("2.58053") != std::string::npos);
}

TEST_CASE("dipole and momentum elements") {
  char* s = nullptr;
  REQUIRE(hz_dipole(2, 1, 0, 'z', 1, 0, 0, &s) == HZ_OK);
  std::string j = take(s);
  CHECK(j.find("\"re\"") != std::string::npos);
  s = nullptr;
  REQUIRE(hz_momentum(2, 1, 0, 'z', 1, 0, 0, &s) == HZ_OK);
  take(s);
  s = nullptr;
  CHECK(hz_dipole(2, 1, 0, 'q', 1, 0, 0, &s) == HZ_ERR_INVALID_ARGUMENT);
  s = nullptr;
  REQUIRE(hz_dipole_table(2, 1, &s) == HZ_OK);
  CHECK(take(s).find("entries") != std::string::npos);
}

TEST_CASE("imz formats") {
  char* s = nullptr;
  REQUIRE(hz_imz(3, "one", "exact", &s) == HZ_OK);
  std::string exact = take(s);
  CHECK(exact.find("192/1953125") != std::string::npos);
  CHECK(exact.find("738423/250000000") != std::string::npos);
  CHECK(exact.find("49152/48828125") != std::string::npos);
  s = nullptr;
  REQUIRE(hz_imz(2, "quartic", "csv", &s) == HZ_OK);
  take(s);
  s = nullptr;
  REQUIRE(hz_imz(2, "one", "json", &s) == HZ_OK);
  take(s);
  s = nullptr;
  CHECK(hz_imz(3, "cubic", "exact", &s) == HZ_ERR_INVALID_ARGUMENT);
  s = nullptr;
  CHECK(hz_imz(0, "one", "exact", &s) == HZ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("lifetimes") {
  char* s = nullptr;
  REQUIRE(hz_lifetimes(3, nullptr, "text", &s) == HZ_OK);
  std::string t = take(s);
  CHECK(t.find("1.58303e-07") != std::string::npos);
  CHECK(t.find("5.2686e-09") != std::string::npos);
  CHECK(t.find("1.54593e-08") != std::string::npos);
  s = nullptr;
  CHECK(hz_lifetimes(3, "/nonexistent/file", "text", &s) == HZ_ERR_IO);
}

TEST_CASE("model lifecycle and simulation surface") {
  hz_model* m = nullptr;
  REQUIRE(hz_model_create(nullptr, &m) == HZ_OK);
  REQUIRE(m != nullptr);
  int dim = 0;
  REQUIRE(hz_model_dimension(m, &dim) == HZ_OK);
  CHECK(dim == 2 * 401);
  unsigned long long c1 = 0, c2 = 0;
  REQUIRE(hz_model_checksum(m, &c1) == HZ_OK);
  hz_model* m2 = nullptr;
  REQUIRE(hz_model_create(nullptr, &m2) == HZ_OK);
  REQUIRE(hz_model_checksum(m2, &c2) == HZ_OK);
  CHECK(c1 == c2);

  char* s = nullptr;
  REQUIRE(hz_survival_csv(m, 10.0, 50, &s) == HZ_OK);
  std::string csv = take(s);
  CHECK(csv.rfind("s,re_a,im_a,abs_a\n", 0) == 0);

  s = nullptr;
  REQUIRE(hz_zmatrix(m, &s) == HZ_OK);
  CHECK(take(s).find("Z matrix") != std::string::npos);

  s = nullptr;
  REQUIRE(hz_pole(m, -1, &s) == HZ_OK);
  CHECK(take(s).find("residual") != std::string::npos);

  double gs[3] = {0.1, 0.05, 0.025};
  s = nullptr;
  REQUIRE(hz_corollary_csv(m, 0.5, gs, 3, &s) == HZ_OK);
  CHECK(take(s).rfind("g,", 0) == 0);

  hz_model_free(m);
  hz_model_free(m2);
  hz_model_free(nullptr);  // must be a no-op
}

TEST_CASE("model error paths") {
  hz_model* m = nullptr;
  CHECK(hz_model_create("levels = -1\nbad line\n", &m) == HZ_ERR_IO);
  CHECK(m == nullptr);
  std::string msg = hz_last_error_message();
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(hz_model_create_from_file("/nonexistent/path.cfg", &m) == HZ_ERR_IO);
}

TEST_CASE("feshbach check via C API") {
  double worst = 1.0;
  char* s = nullptr;
  REQUIRE(hz_feshbach_check(424242u, 5, &worst, &s) == HZ_OK);
  CHECK(worst < 1e-10);
  CHECK(take(s).find("max residual") != std::string::npos);
}
