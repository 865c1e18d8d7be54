#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "tomophase/io.hpp"
#include "tomophase/xray.hpp"

using namespace tomophase;
namespace fs = std::filesystem;

namespace {

const std::string kCli = TOMOPHASE_CLI_PATH;

int run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("tomophase_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 64") {
  CHECK(run("") == 64);
  CHECK(run("no-such-command") == 64);
  CHECK(run("gen-object --n 3") == 64);  // missing --out
}

TEST_CASE("generation, projection, slice verification, reconstruction") {
  const TempDir tmp;
  REQUIRE(run("gen-object --n 3 --kind gaussian --seed 5 --out " + (tmp / "f.tph")) == 0);
  REQUIRE(run("gen-scheme --n 3 --family x --seed 6 --out " + (tmp / "s.tph")) == 0);
  CHECK(run("check-scheme --scheme " + (tmp / "s.tph") + " --report " + (tmp / "ct.csv")) ==
        0);
  REQUIRE(run("project --object " + (tmp / "f.tph") + " --scheme " + (tmp / "s.tph") +
              " --out-dir " + (tmp / "proj")) == 0);
  CHECK(run("verify-slice --object " + (tmp / "f.tph") + " --scheme " + (tmp / "s.tph") +
            " --report " + (tmp / "slice.csv")) == 0);
  REQUIRE(run("reconstruct --projections-dir " + (tmp / "proj") + " --scheme " +
              (tmp / "s.tph") + " --out " + (tmp / "rec.tph") + " --report " +
              (tmp / "rec.csv")) == 0);

  // The reconstruction artifact matches the original object.
  const Object3D f = decode_object(read_file(tmp / "f.tph"));
  const Object3D rec = decode_object(read_file(tmp / "rec.tph"));
  CHECK((rec.values() - f.values()).cwiseAbs().maxCoeff() < 1e-8);

  // Reports are deterministic across reruns.
  const std::string first = read_file(tmp / "slice.csv");
  REQUIRE(run("verify-slice --object " + (tmp / "f.tph") + " --scheme " + (tmp / "s.tph") +
              " --report " + (tmp / "slice.csv")) == 0);
  CHECK(read_file(tmp / "slice.csv") == first);
}

TEST_CASE("check-scheme fails cleanly on a degenerate scheme") {
  const TempDir tmp;
  const Scheme bad{Axis::X, {{0, 0}, {0, 0}, {0, 0}}, std::nullopt, 3, 5};
  write_file(tmp / "bad.tph", encode(bad));
  CHECK(run("check-scheme --scheme " + (tmp / "bad.tph") + " --report " +
            (tmp / "r.csv")) == 1);
  const std::string csv = read_file(tmp / "r.csv");
  CHECK(csv.find("strong_ct_worst_count,1,") != std::string::npos);
  CHECK(csv.find("false") != std::string::npos);
}

TEST_CASE("diffraction and autocorrelation recovery round trip") {
  const TempDir tmp;
  REQUIRE(run("gen-object --n 2 --kind gaussian --seed 1 --out " + (tmp / "f.tph")) == 0);
  REQUIRE(run("gen-scheme --n 2 --family z --seed 2 --extra 1,0.5 --out " +
              (tmp / "s.tph")) == 0);
  REQUIRE(run("gen-mask --p 3 --seed 3 --out " + (tmp / "mu.tph")) == 0);
  REQUIRE(run("project --object " + (tmp / "f.tph") + " --scheme " + (tmp / "s.tph") +
              " --out-dir " + (tmp / "proj")) == 0);
  REQUIRE(run("diffract --projections-dir " + (tmp / "proj") + " --mask " +
              (tmp / "mu.tph") + " --out-dir " + (tmp / "pat")) == 0);
  CHECK(run("recover-autocorr --pattern " + (tmp / "pat") + "/pattern_00.tph --out " +
            (tmp / "R.tph")) == 0);

  // Independent check of the recovered autocorrelation.
  const Object3D f = decode_object(read_file(tmp / "f.tph"));
  const Scheme s = decode_scheme(read_file(tmp / "s.tph"));
  const Mask2D mu = decode_mask(read_file(tmp / "mu.tph"));
  const Projection2D masked = apply_mask(project(f, s.directions()[0]), mu);
  const Projection2D R = decode_projection(read_file(tmp / "R.tph"));
  CHECK((R.values() - autocorrelation(masked).values()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("verify-uniqueness and physics-demo") {
  const TempDir tmp;
  REQUIRE(run("gen-object --n 3 --kind gaussian --seed 4 --out " + (tmp / "f.tph")) == 0);
  REQUIRE(run("gen-scheme --n 3 --family y --seed 5 --extra 0.3,1 --out " +
              (tmp / "s.tph")) == 0);
  REQUIRE(run("gen-mask --p 5 --seed 6 --out " + (tmp / "mu.tph")) == 0);
  CHECK(run("verify-uniqueness --object " + (tmp / "f.tph") + " --mask " +
            (tmp / "mu.tph") + " --scheme " + (tmp / "s.tph") + " --report " +
            (tmp / "u.csv")) == 0);
  CHECK(run("physics-demo --object " + (tmp / "f.tph") + " --seed 7 --report " +
            (tmp / "p.csv")) == 0);
}

TEST_CASE("classify-ambiguity and the oracle command") {
  const TempDir tmp;
  REQUIRE(run("gen-object --n 2 --kind gaussian --seed 8 --out " + (tmp / "f.tph")) == 0);
  REQUIRE(run("gen-scheme --n 2 --family x --seed 9 --extra 1,0.25 --out " +
              (tmp / "s.tph")) == 0);
  REQUIRE(run("gen-mask --p 3 --seed 10 --out " + (tmp / "mu.tph")) == 0);
  REQUIRE(run("project --object " + (tmp / "f.tph") + " --scheme " + (tmp / "s.tph") +
              " --out-dir " + (tmp / "proj")) == 0);
  CHECK(run("classify-ambiguity --projections-dir " + (tmp / "proj") + " --scheme " +
            (tmp / "s.tph") + " --report " + (tmp / "a.csv")) == 0);

  write_file(tmp / "support.txt", "0 0 0\n-1 0 0\n0 -1 0\n0 0 -1\n");
  write_file(tmp / "alphabet.txt", "0 0\n1 0\n0 1\n-1 0\n0 -1\n");
  CHECK(run("oracle --support-file " + (tmp / "support.txt") + " --alphabet-file " +
            (tmp / "alphabet.txt") + " --mask " + (tmp / "mu.tph") + " --scheme " +
            (tmp / "s.tph") + " --report " + (tmp / "o.csv")) == 0);
}

TEST_CASE("numerical failures exit with 2") {
  const TempDir tmp;
  REQUIRE(run("gen-object --n 3 --kind gaussian --seed 11 --out " + (tmp / "f.tph")) == 0);
  REQUIRE(run("gen-scheme --n 3 --family z --seed 12 --out " + (tmp / "s.tph")) == 0);
  REQUIRE(run("project --object " + (tmp / "f.tph") + " --scheme " + (tmp / "s.tph") +
              " --out-dir " + (tmp / "proj")) == 0);
  // Corrupt one projection so the per-frequency spectra are no longer
  // consistent with any supported object.
  Projection2D junk(5);
  Rng rng(13);
  for (Eigen::Index i = 0; i < junk.values().size(); ++i)
    junk.values().data()[i] = Complex(rng.normal(), rng.normal());
  write_file(tmp / "proj/proj_01.tph", encode(junk));
  CHECK(run("reconstruct --projections-dir " + (tmp / "proj") + " --scheme " +
            (tmp / "s.tph") + " --out " + (tmp / "rec.tph") + " --report " +
            (tmp / "rec.csv")) == 2);
}

TEST_CASE("TOMOPHASE_SEED sets the default seed") {
  const TempDir tmp;
  const int a = std::system(("TOMOPHASE_SEED=21 " + kCli + " gen-mask --p 3 --out " +
                             (tmp / "a.tph") + " > /dev/null 2>&1")
                                .c_str());
  REQUIRE(WEXITSTATUS(a) == 0);
  REQUIRE(run("gen-mask --p 3 --seed 21 --out " + (tmp / "b.tph")) == 0);
  CHECK(read_file(tmp / "a.tph") == read_file(tmp / "b.tph"));
  REQUIRE(run("gen-mask --p 3 --seed 22 --out " + (tmp / "c.tph")) == 0);
  CHECK(read_file(tmp / "a.tph") != read_file(tmp / "c.tph"));
}
