#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is folded in only when asked.
Run run(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string("\"") + GENUS1_CLI + "\" " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> out;
  std::stringstream ss(row);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("stability command") {
  const Run r0 = run("stability --a 0 --b 1");
  CHECK(r0.code == 0);
  CHECK(starts_with(r0.out, "N=2 d=0 residual="));
  const Run r1 = run("stability --a 1 --b 1");
  CHECK(r1.code == 0);
  CHECK(starts_with(r1.out, "N=3 d=2 residual="));
  CHECK(run("stability --a 0 --b -1").code == 2);
  const Run r2 = run("stability --a 0 --b -1", true);
  CHECK(r2.out.find("NotInP") != std::string::npos);
}

TEST_CASE("stability budget exceeded exits 3") {
  // close to the degenerate boundary N is large; a tiny budget cannot reach it
  CHECK(run("stability --a 2.02 --b 1.03 --dmax 2").code == 3);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("stability --a 0").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("region command") {
  const Run r = run("region --grid 3 --a-min -1 --a-max 1 --b-min 0 --b-max 2 --threads 1");
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == "a,b,N,predicted_le3");
  bool found = false;
  for (const auto& row : rows) found = found || row == "0,1,2,true";
  CHECK(found);
}

TEST_CASE("region output is reproducible and written to files") {
  const std::string args = "region --grid 6 --a-min -1.5 --a-max 1.5 --b-min -0.5 --b-max 2.5";
  const Run a = run(args + " --threads 1");
  const Run b = run(args + " --threads 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run c = run(args + " --out region_test.csv --svg region_test.svg");
  CHECK(c.code == 0);
  CHECK(slurp("region_test.csv") == a.out);
  const std::string svg = slurp("region_test.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // agreement of computed N <= 3 with the closed form on this small grid
  int agree = 0, total = 0;
  for (const auto& row : lines(a.out)) {
    const auto f = fields(row);
    if (f.size() != 4 || f[0] == "a") continue;
    const int n = std::stoi(f[2]);
    if (n < 0) continue;
    ++total;
    agree += ((n <= 3) == (f[3] == "true")) ? 1 : 0;
  }
  CHECK(total > 10);
  CHECK(agree >= total - 2);
}

TEST_CASE("gamma table command") {
  const Run r = run("gamma-table --nmax 6");
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "N,gamma_max,markov_cap");
  const auto n3 = fields(rows[1]);
  CHECK(n3[0] == "3");
  CHECK(std::stod(n3[1]) == doctest::Approx(2.57).epsilon(0.01));
  CHECK(n3[2] == "4");
  const auto n6 = fields(rows[4]);
  CHECK(n6[0] == "6");
  CHECK(std::stod(n6[1]) == doctest::Approx(20.70).epsilon(0.01));
  CHECK(n6[2] == "64");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields(rows[i]);
    CHECK(std::stod(f[1]) < std::stod(f[2]));
  }
  CHECK(run("gamma-table --nmax 2").code == 2);
}

TEST_CASE("pencil command") {
  const Run r4 = run("pencil --a 0 --b 1 --k 2 --L 1,x,y --format text");
  CHECK(r4.code == 0);
  CHECK(starts_with(r4.out, "size=4 coords=2 lifted=5\n"));
  const Run r6 = run("pencil --a 0 --b 1 --k 3 --L 1,x,x*y --format text");
  CHECK(r6.code == 0);
  CHECK(starts_with(r6.out, "size=6 coords=2 lifted=9\n"));
  CHECK(r6.out.find("x*y | v2 | v3 | v4 | x - u5 | u2 - u6") != std::string::npos);

  const Run sdpa = run("pencil --a 0 --b 1 --k 2 --format sdpa --out pencil_test.dat-s");
  CHECK(sdpa.code == 0);
  CHECK(starts_with(slurp("pencil_test.dat-s"), "7\n1\n4\n"));

  const Run bad = run("pencil --a 0 --b 1 --k 2 --L 1,x,", true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("error:") != std::string::npos);
  CHECK(run("pencil --a 0 --b 1 --k 2 --L 1,x^3").code == 2);
}

TEST_CASE("member command") {
  const Run in = run("member --a 0 --b 1 --k 2 --x 0 --y 0");
  CHECK(in.code == 0);
  CHECK(starts_with(in.out, "inside margin="));
  const Run out = run("member --a 0 --b 1 --k 2 --x 2 --y 0");
  CHECK(out.code == 1);
  CHECK(starts_with(out.out, "outside"));
}

TEST_CASE("support command") {
  const Run r = run("support --a 0 --b 1 --k 2 --cx 1 --cy 0");
  CHECK(r.code == 0);
  REQUIRE(starts_with(r.out, "value="));
  CHECK(std::stod(r.out.substr(6)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("hull command") {
  const Run r = run("hull --a 0 --b 1 --k 2 --directions 360 --threads 2");
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 361);
  CHECK(rows[0] == "dir_x,dir_y,value,opt_x,opt_y");
  CHECK(fields(rows[1]).size() == 5);
  const Run again = run("hull --a 0 --b 1 --k 2 --directions 360 --threads 1");
  CHECK(again.out == r.out);
  CHECK(run("hull --a 0 --b 1 --k 2 --directions 16 --out hull_test.csv --svg hull_test.svg").code == 0);
  CHECK(lines(slurp("hull_test.csv")).size() == 17);
  CHECK(slurp("hull_test.svg").find("<polyline") != std::string::npos);
}

TEST_CASE("tangent-cert command") {
  const Run r = run("tangent-cert --a 0 --b 1 --x0 0.5 --branch upper");
  CHECK(r.code == 0);
  CHECK(starts_with(r.out, "curve a=0 b=1\n"));
  CHECK(r.out.find("case generic") != std::string::npos);
  const Run v = run("tangent-cert --a 0 --b 1 --x0 1");
  CHECK(v.code == 0);
  CHECK(v.out.find("case vertical_tangent") != std::string::npos);
  CHECK(run("tangent-cert --a 0 --b 1 --x0 3").code == 2);
  CHECK(run("tangent-cert --a 0 --b 1 --x0 0.5 --branch sideways").code == 2);
}

TEST_CASE("thread override through the environment") {
  const std::string args = "hull --a 0.3 --b 0.8 --k 2 --directions 24";
  const Run a = run(args);
  setenv("GENUS1_THREADS", "3", 1);
  const Run c = run(args);
  unsetenv("GENUS1_THREADS");
  CHECK(a.code == 0);
  CHECK(c.out == a.out);
}
