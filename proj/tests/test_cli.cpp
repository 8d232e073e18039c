#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "hyperspec/hgr_io.hpp"
#include "hyperspec/report.hpp"

using namespace hyperspec;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + HYPERSPEC_CLI + std::string(" ") + args + " 2>/dev/null";
  Result res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  res.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return res;
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "hyperspec_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("construct writes canonical HGR") {
  auto r = run("construct turan --n 6 --k 3 --r 3");
  CHECK(r.status == 0);
  CHECK(r.out == to_hgr(turan(6, 3, 3)));
  CHECK(run("construct complete --n 5 --r 3").out == to_hgr(complete(5, 3)));
  CHECK(run("construct multipartite --parts 1,2,2 --r 3").out ==
        to_hgr(complete_multipartite(PartSizes{{1, 2, 2}}, 3)));
  CHECK(run("construct expansion --clique 4 --r 3").out == to_hgr(expansion(SimpleGraph::complete(4), 3)));
}

TEST_CASE("graph operations read files") {
  auto dir = scratch();
  save_hgr(dir / "a.hgr", complete(4, 3));
  save_hgr(dir / "b.hgr", Hypergraph::edgeless(1, 3));
  CHECK(run("construct join " + (dir / "b.hgr").string() + " " + (dir / "a.hgr").string()).out ==
        to_hgr(complete(5, 3)));
  CHECK(run("construct tcopies " + (dir / "a.hgr").string() + " --t 2").out == to_hgr(t_copies(complete(4, 3), 2)));
  CHECK(run("construct union " + (dir / "a.hgr").string() + " " + (dir / "a.hgr").string()).out ==
        to_hgr(t_copies(complete(4, 3), 2)));
  CHECK(run("construct shadow " + (dir / "a.hgr").string()).out == to_hgr(complete(4, 2)));
}

TEST_CASE("spectral report and exit codes") {
  auto dir = scratch();
  save_hgr(dir / "k3.hgr", complete(3, 3));
  const std::string in = (dir / "k3.hgr").string();
  auto r = run("spectral " + in + " --p 3");
  CHECK(r.status == 0);
  auto rep = parse_report(r.out);
  CHECK(std::stod(rep.get("lambda")) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.get("converged") == "true");
  CHECK(run("spectral " + in + " --p inf").out.find("lambda = 6\n") != std::string::npos);
  CHECK(std::stod(parse_report(run("spectral " + in + " --lagrangian").out).get("lambda")) ==
        doctest::Approx(2.0 / 9.0));
  CHECK(run("spectral " + in + " --p 1").status == 3);
  CHECK(run("spectral " + in + " --p abc").status == 3);
  CHECK(run("spectral " + (dir / "missing.hgr").string()).status == 3);
  CHECK(run("spectral").status == 3);
  CHECK(run("--help").status == 0);
}

TEST_CASE("non-convergence exits with 2") {
  auto dir = scratch();
  save_hgr(dir / "t.hgr", turan(9, 3, 3));
  auto r = run("spectral " + (dir / "t.hgr").string() + " --p 1.5 --max-iter 1 --restarts 1 --tol 1e-15");
  CHECK(r.status == 2);
  CHECK(parse_report(r.out).get("converged") == "false");
}

TEST_CASE("cap exceeded exits with 4") {
  CHECK(run("lab max-edges --n 8 --r 3 --pattern family:4").status == 4);
}

TEST_CASE("check prints certificates") {
  auto dir = scratch();
  save_hgr(dir / "k5.hgr", complete(5, 3));
  auto rep = parse_report(run("check " + (dir / "k5.hgr").string() + " --pattern family:4").out);
  CHECK(rep.get("free") == "false");
  CHECK(rep.get("certificate.valid") == "true");
  CHECK(run("check " + (dir / "k5.hgr").string() + " --pattern family:2").status == 3);
}

TEST_CASE("output does not depend on kernels or job count") {
  auto dir = scratch();
  save_hgr(dir / "t.hgr", turan(10, 3, 3));
  const std::string args = "spectral " + (dir / "t.hgr").string() + " --p 2.5 --seed 3";
  auto base = run(args);
  CHECK(base.status == 0);
  CHECK(run(args, "HYPERSPEC_KERNEL=scalar").out == base.out);
  CHECK(run("--jobs 4 " + args).out == base.out);
  CHECK(run(args, "HYPERSPEC_JOBS=3").out == base.out);
}

TEST_CASE("manifest records inputs and configuration") {
  auto dir = scratch();
  save_hgr(dir / "k3.hgr", complete(3, 3));
  const auto manifest = dir / "m.txt";
  const auto out = dir / "o.txt";
  auto r = run("spectral " + (dir / "k3.hgr").string() + " --p 3 --seed 9 --out " + out.string() + " --manifest " +
               manifest.string());
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  auto m = parse_report(read_file(manifest));
  CHECK(m.get("seed") == "9");
  CHECK(m.get("config.p") == "3");
  CHECK(m.get("exit_status") == "0");
  CHECK(m.get("input." + (dir / "k3.hgr").string()).rfind("fnv1a64:", 0) == 0);
  CHECK(parse_report(read_file(out)).get("seed") == "9");
}

TEST_CASE("lab witnesses are written as HGR files") {
  auto dir = scratch() / "witnesses";
  fs::remove_all(dir);
  auto r = run("lab max-edges --n 5 --r 3 --pattern family:4 --witness-dir " + dir.string());
  CHECK(r.status == 0);
  CHECK(fs::exists(dir / "witness_0.hgr"));
  CHECK(load_hgr(dir / "witness_0.hgr").edge_count() == static_cast<std::size_t>(std::stoul(parse_report(r.out).get("best_value"))));
}

}  // TEST_SUITE
