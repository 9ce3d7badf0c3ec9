// End-to-end checks of the installed command-line surface. DDMSIM_BIN and
// DDMSIM_CONFIG are injected by the build so the tests run against the binary
// and the shipped default config without any environment setup.

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(DDMSIM_BIN) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CmdResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> ls;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) ls.push_back(l);
  return ls;
}

// first CSV data line following the fidelity header, split on commas
std::vector<std::string> fidelity_row(const std::string& text) {
  auto ls = lines_of(text);
  for (size_t i = 0; i + 1 < ls.size(); ++i) {
    if (ls[i].rfind("gate,mode,", 0) == 0) {
      std::vector<std::string> fields;
      std::istringstream in(ls[i + 1]);
      std::string f;
      while (std::getline(in, f, ',')) fields.push_back(f);
      return fields;
    }
  }
  return {};
}

std::string strip_timestamp(const std::string& text) {
  std::string out;
  for (const auto& l : lines_of(text))
    if (l.rfind("# timestamp:", 0) != 0) out += l + "\n";
  return out;
}

const std::string cfg = std::string(" ") + DDMSIM_CONFIG;

}  // namespace

TEST_CASE("params reports derived quantities and validation verdicts") {
  CmdResult r = run_cli("params" + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("omega0") != std::string::npos);
  CHECK(r.out.find("C0 inversion round-trip relative error") != std::string::npos);
  CHECK(r.out.find("strong_coupling") != std::string::npos);
  CHECK(r.out.find("triplet_isolation") != std::string::npos);

  // the shipped device flunks triplet isolation, so --strict refuses it
  CmdResult strict = run_cli("params --strict" + cfg);
  CHECK(strict.exit_code == 3);
}

TEST_CASE("gate rows carry the synthesized timing") {
  CmdResult r = run_cli("gate --type sqrtiswap --mode effective" + cfg);
  CHECK(r.exit_code == 0);
  auto row = fidelity_row(r.out);
  REQUIRE(row.size() == 7);
  CHECK(row[0] == "sqrtiswap");
  CHECK(row[1] == "effective");
  CHECK(std::stod(row[4]) > 1.0 - 1e-9);
  CHECK(std::stod(row[6]) == doctest::Approx(8.0).epsilon(1e-9));

  CmdResult swap = run_cli("gate --type swap-photon --mode exact_full" + cfg);
  auto srow = fidelity_row(swap.out);
  REQUIRE(srow.size() == 7);
  CHECK(std::stod(srow[4]) > 1.0 - 1e-9);
  CHECK(std::stod(srow[6]) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("zero-angle rotation is the identity row") {
  CmdResult r = run_cli("gate --type rx --angle 0 --mode exact_full" + cfg);
  CHECK(r.exit_code == 0);
  auto row = fidelity_row(r.out);
  REQUIRE(row.size() == 7);
  CHECK(std::stod(row[4]) == 1.0);
  CHECK(std::stod(row[6]) == 0.0);
}

TEST_CASE("usage errors exit with code 2 and name the problem") {
  CmdResult no_angle = run_cli("gate --type rx --mode effective" + cfg, true);
  CHECK(no_angle.exit_code == 2);
  CHECK(no_angle.out.find("--angle is required") != std::string::npos);

  CmdResult bad_type = run_cli("gate --type hadamard" + cfg, true);
  CHECK(bad_type.exit_code == 2);
  CHECK(bad_type.out.find("invalid gate type") != std::string::npos);

  CmdResult no_file = run_cli("params /nonexistent/path.ini", true);
  CHECK(no_file.exit_code == 2);

  std::ofstream bad("/tmp/ddm_cli_unknown_key.ini");
  bad << "[simulation]\nbogus = 1\n";
  bad.close();
  CmdResult unknown = run_cli("params /tmp/ddm_cli_unknown_key.ini", true);
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.out.find("bogus") != std::string::npos);

  CmdResult bad_target = run_cli("calibrate --target-var 0" + cfg, true);
  CHECK(bad_target.exit_code == 2);
}

TEST_CASE("readout emits the full scan with peak metadata") {
  CmdResult r = run_cli("readout --state 1" + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("# peak_GHz_linear: 10.003125") != std::string::npos);
  int data_lines = 0;
  for (const auto& l : lines_of(r.out))
    if (!l.empty() && l[0] != '#' && l.find(',') != std::string::npos &&
        l.rfind("omega_dr", 0) != 0)
      ++data_lines;
  CHECK(data_lines == 401);

  CmdResult r0 = run_cli("readout --state 0 --points 21" + cfg);
  CHECK(r0.out.find("# peak_GHz_linear: 9.996875") != std::string::npos);
}

TEST_CASE("noisy runs are reproducible under a fixed seed") {
  const std::string args =
      "gate --type sqrtiswap --mode noisy --trajectories 300 --seed 7" + cfg;
  CmdResult a = run_cli(args);
  CmdResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));

  CmdResult c = run_cli(
      "gate --type sqrtiswap --mode noisy --trajectories 300 --seed 8" + cfg);
  CHECK(fidelity_row(a.out)[4] != fidelity_row(c.out)[4]);
}

TEST_CASE("noisy single-qubit runs print the literature reference") {
  CmdResult r = run_cli(
      "gate --type rx --angle 3.141592653589793 --mode noisy --trajectories 400" +
          cfg,
      true);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("reference fidelity (pi rotation) 0.9952") != std::string::npos);
  CHECK(r.out.find("absolute deviation") != std::string::npos);
}

TEST_CASE("sweep tabulates the two-qubit gate time linearly in the detuning") {
  CmdResult r = run_cli(
      "sweep --param delta --from 0.5 --to 2 --steps 4 --metric t_2q" + cfg);
  CHECK(r.exit_code == 0);
  auto ls = lines_of(r.out);
  bool saw_header = false, saw_8 = false, saw_16 = false;
  for (const auto& l : ls) {
    if (l == "delta,t_2q" || l == "simulation.delta_2q,t_2q") saw_header = true;
    if (l == "1,8") saw_8 = true;
    if (l == "2,16") saw_16 = true;
  }
  CHECK(saw_header);
  CHECK(saw_8);
  CHECK(saw_16);
}

TEST_CASE("calibrate emits a machine-readable noise fragment") {
  CmdResult r = run_cli(
      "calibrate --target-var 0.015707963267948967 --gate sqrtiswap" + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[noise]") != std::string::npos);
  CHECK(r.out.find("sigma_rad_per_ns = 0.0156664") != std::string::npos);
}

TEST_CASE("output redirection writes the CSV and keeps notes on stdout") {
  const std::string path = "/tmp/ddm_cli_out.csv";
  std::remove(path.c_str());
  CmdResult r = run_cli("gate --type sqrtiswap --mode effective --out " + path + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mean fidelity") != std::string::npos);  // note stream
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  auto row = fidelity_row(buf.str());
  REQUIRE(row.size() == 7);
  CHECK(row[0] == "sqrtiswap");
}

TEST_CASE("initialization subcommand distinguishes ramp from quench") {
  CmdResult ramp = run_cli("gate --type init" + cfg);
  CHECK(ramp.exit_code == 0);
  auto rrow = fidelity_row(ramp.out);
  REQUIRE(rrow.size() == 7);
  CHECK(rrow[1] == "adiabatic");
  CHECK(std::stod(rrow[4]) > 0.999);

  CmdResult q = run_cli("gate --type init --ramp-time 0 --delta-start 1000" + cfg);
  auto qrow = fidelity_row(q.out);
  REQUIRE(qrow.size() == 7);
  CHECK(qrow[1] == "quench");
  CHECK(std::stod(qrow[4]) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("property suite runs headless and exits cleanly") {
  CmdResult r = run_cli("selftest" + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("selftest: all properties hold") != std::string::npos);
}
