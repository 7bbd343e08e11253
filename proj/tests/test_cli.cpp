#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string data(const std::string& name) { return std::string(PBW_DATA_DIR) + "/" + name; }

// Runs the pbw binary with stderr folded into stdout.
Run pbw(const std::string& args) {
  const char* bin = std::getenv("PBW_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "PBW_BIN is not set");
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("normal form of a descending word") {
  auto r = pbw("nf catalog:heisenberg -e 'q*p'");
  CHECK(r.code == 0);
  CHECK(r.out == "p*q - r\n");
  r = pbw("nf catalog:lobachevskii_lin2_xi -e 'tau*xi' -e 'taus*tau*xi'");
  CHECK(r.code == 0);
  CHECK(r.out == "(xi + 1)*tau\nxi*taus*tau\n");  // the two shifts cancel
  r = pbw("comm catalog:heisenberg -e p -e q");
  CHECK(r.out == "r\n");
}

TEST_CASE("passing suites exit 0") {
  for (const char* args : {"verma --qr 1 --degree 8", "check catalog:lobachevskii_lin1", "check catalog:osc",
                           "check " PBW_DATA_DIR "/nonlinear_sl2_maps.pbw", "morphism " PBW_DATA_DIR "/nonlinear_sl2_maps.pbw",
                           "morphism " PBW_DATA_DIR "/nonlinear_sl2_maps.pbw --name iota", "qoc catalog:uq_sl2.q",
                           "qoc catalog:nonlinear_sl2.q --param h0=t^2+1", "osc-witness --r 2 --mu 1/3",
                           "catalog", "catalog u_sl2_sl2_localized"}) {
    INFO(args);
    auto r = pbw(args);
    INFO(r.out);
    CHECK(r.code == 0);
  }
}

TEST_CASE("planted failures exit 1 with witnesses") {
  auto r = pbw("check " + data("bad_sigma.pbw"));
  CHECK(r.code == 1);
  CHECK(contains(r.out, "ConfluenceFailure: "));
  r = pbw("morphism " + data("bad_map.pbw"));
  CHECK(r.code == 1);
  CHECK(contains(r.out, "FAIL"));
  r = pbw("qoc " + data("bad_qoc.pbw"));
  CHECK(r.code == 1);
  CHECK(contains(r.out, "VanishingViolation"));
  r = pbw("verma --qr 1/2 --degree 6 --perturb");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "RelationViolation"));
  r = pbw("osc-witness --r 2 --mu 1/3 --xi-constant 0");
  CHECK(r.code == 1);
  r = pbw("extremal --kmax 4 --truncation 2");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "NoDictionaryFound"));
  CHECK(contains(r.out, "note: relation: s+ s- = "));
}

TEST_CASE("usage and parse errors exit 2") {
  for (const std::string& args :
       {std::string("bogus"), std::string("check"), "check " + data("bad_syntax.pbw"),
        "check " + data("bad_misoriented.pbw"), "check " + data("bad_undeclared.pbw"),
        "check " + data("bad_nonascending.pbw"), "check " + data("missing.pbw"), std::string("check catalog:nope"),
        std::string("check catalog:nonlinear_sl2"), std::string("nf catalog:heisenberg -e 'q*s'"),
        std::string("nf catalog:heisenberg -e 'q*'"), std::string("verma --qr zero"), std::string("verma --qr -1"),
        std::string("comm catalog:heisenberg -e p"), std::string("extremal --kmax 0"),
        std::string("extremal --weights '1,1/3'"), std::string("morphism " PBW_DATA_DIR "/trivial.pbw"),
        std::string("verma --format=yaml")}) {
    INFO(args);
    auto r = pbw(args);
    INFO(r.out);
    CHECK(r.code == 2);
  }
  auto r = pbw("check " + data("bad_syntax.pbw"));
  CHECK(contains(r.out, "bad_syntax.pbw:4:1"));
}

TEST_CASE("reports are byte-identical across runs") {
  for (const char* args : {"verma --qr 2 --degree 8", "verma --qr 2 --degree 8 --format=json-lines",
                           "check catalog:u_sl2_sl2_localized", "extremal --kmax 4 --truncation 2",
                           "morphism " PBW_DATA_DIR "/bad_map.pbw"}) {
    INFO(args);
    const auto a = pbw(args), b = pbw(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json-lines records") {
  auto r = pbw("osc-witness --r 1 --mu 0 --format=json-lines");
  CHECK(r.code == 0);
  std::size_t lines = 0;
  std::size_t start = 0;
  while (start < r.out.size()) {
    const auto end = r.out.find('\n', start);
    const std::string line = r.out.substr(start, end - start);
    CHECK(line.rfind("{\"check\":", 0) == 0);
    CHECK(contains(line, "\"status\":"));
    CHECK(contains(line, "\"witness\":"));
    ++lines;
    start = end + 1;
  }
  CHECK(lines > 10);
}
