#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sswave/geometry.hpp"
#include "sswave/io.hpp"
#include "sswave/parallel.hpp"
#include "sswave/sampling.hpp"
#include "sswave/sphere_basis.hpp"

using namespace sswave;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "sswave_io_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("fnv1a reference vectors") {
  CHECK(fnv1a_hash("") == 14695981039346656037ull);
  CHECK(fnv1a_hash("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a_hash("hello") == 0xa430d84680aabd0bull);
}

TEST_CASE("format double round trips") {
  for (const double v : {0.1, 1.0 / 3.0, 12345.6789e-12, -2.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("csv writer emits deterministic bytes") {
  const TempDir tmp;
  const std::vector<std::string> header = {"x", "y"};
  const std::vector<std::vector<double>> rows = {{1.0, 0.1}, {2.0, 1.0 / 3.0}};
  const fs::path p1 = tmp.path / "a.csv", p2 = tmp.path / "b.csv";
  write_csv_atomic(p1.string(), header, rows);
  write_csv_atomic(p2.string(), header, rows);
  const std::string c1 = read_file(p1);
  CHECK(c1 == read_file(p2));
  CHECK(c1.substr(0, 4) == "x,y\n");
  CHECK_THROWS(write_csv_atomic((tmp.path / "bad.csv").string(), header, {{1.0}}));
}

TEST_CASE("snapshot round trip in both formats") {
  const TempDir tmp;
  const BallGrid grid = ball_grid(8, 4);
  Rng rng(9);
  StatePair u = random_bandlimited_state(grid, rng, 2, 2);
  SnapshotMeta meta;
  meta.tau = 1.25;
  meta.p = 7.0;
  meta.a = Vec3(0.1, 0.0, -0.2);
  meta.N = 8;
  meta.L = 4;
  for (const bool text : {false, true}) {
    const std::string name = text ? "snap_text" : "snap_bin";
    save_snapshot(tmp.path.string(), name, meta, u, text);
    SnapshotMeta got;
    const StatePair back = load_snapshot(tmp.path.string(), name, &got);
    CHECK((back.f1 - u.f1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.f2 - u.f2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(got.tau == meta.tau);
    CHECK(got.p == meta.p);
    CHECK(got.a == meta.a);
    CHECK(got.N == meta.N);
    CHECK(got.L == meta.L);
  }
  // Corrupting the binary payload must be detected through the hash.
  {
    std::fstream f(tmp.path / "snap_bin.f64",
                   std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(11);
    f.put('\x5a');
  }
  CHECK_THROWS(load_snapshot(tmp.path.string(), "snap_bin"));
}

TEST_CASE("manifest carries config hash and version") {
  const TempDir tmp;
  nlohmann::json cfg{{"workflow", "test"}, {"p", 5.0}};
  write_manifest(tmp.path.string(), cfg, 1.5);
  const nlohmann::json m = nlohmann::json::parse(read_file(tmp.path / "manifest.json"));
  CHECK(m.at("config") == cfg);
  CHECK(m.at("config_fnv1a").get<std::uint64_t>() == fnv1a_hash(cfg.dump()));
  CHECK(m.contains("version"));
  CHECK(m.contains("commit"));
  CHECK(m.at("wall_seconds").get<double>() == 1.5);
}

TEST_CASE("worker count respects the environment override") {
  setenv("SSWAVE_WORKERS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("SSWAVE_WORKERS", "0", 1);
  CHECK(worker_count() >= 1);
  unsetenv("SSWAVE_WORKERS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("parallel for covers the range and propagates exceptions") {
  setenv("SSWAVE_WORKERS", "4", 1);
  std::vector<int> hits(100, 0);
  parallel_for(100, [&](int i) { hits[i] += 1; });
  for (const int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(8, [&](int i) {
                    if (i == 5) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("SSWAVE_WORKERS");
}

TEST_CASE("random streams are reproducible") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
  Rng c(124);
  bool differs = false;
  Rng a2(123);
  for (int i = 0; i < 10; ++i) differs = differs || (a2.uniform() != c.uniform());
  CHECK(differs);
  // Uniform lies in (0, 1]; rapidity sampling respects the cap.
  Rng d(55);
  for (int i = 0; i < 1000; ++i) {
    const double u = d.uniform();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
  for (int i = 0; i < 100; ++i) CHECK(random_rapidity(d, 0.37).norm() <= 0.37);
}

}  // TEST_SUITE
