// Command-line front end: generation, forward experiments, reconstruction,
// and report emission. All artifacts use the TOMOPHASE container format.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "tomophase/ct_recon.hpp"
#include "tomophase/io.hpp"
#include "tomophase/physics.hpp"
#include "tomophase/uniqueness.hpp"

namespace fs = std::filesystem;
using namespace tomophase;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TOMOPHASE_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

std::array<double, 2> parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError(std::string(what) + " expects two comma-separated numbers");
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

std::vector<fs::path> sorted_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Projection2D> load_projections(const fs::path& dir) {
  std::vector<Projection2D> out;
  for (const fs::path& f : sorted_files(dir)) out.push_back(decode_projection(read_file(f)));
  if (out.empty()) throw MalformedFile("no projection files in " + dir.string());
  return out;
}

bool emit_report(const fs::path& path, const std::vector<ReportRow>& rows) {
  write_report(path, rows);
  bool all = true;
  for (const ReportRow& r : rows) {
    std::printf("%s: %.17g (threshold %.17g) %s\n", r.name.c_str(), r.value, r.threshold,
                r.pass ? "pass" : "FAIL");
    all = all && r.pass;
  }
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete tomography and coded diffraction experiments"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();

  // gen-object
  auto* gen_object = app.add_subcommand("gen-object", "generate a random object");
  int go_n = 3, go_p = 0;
  std::string go_kind = "gaussian", go_out;
  gen_object->add_option("--n", go_n)->required();
  gen_object->add_option("--p", go_p, "padding period (default 2n-1)");
  gen_object->add_option("--kind", go_kind)->check(CLI::IsMember({"gaussian", "phases", "alphabet"}));
  gen_object->add_option("--seed", seed);
  gen_object->add_option("--out", go_out)->required();

  // gen-mask
  auto* gen_mask = app.add_subcommand("gen-mask", "generate a phase mask");
  int gm_p = 5;
  bool gm_plain = false;
  std::string gm_out;
  gen_mask->add_option("--p", gm_p)->required();
  gen_mask->add_option("--seed", seed);
  gen_mask->add_flag("--plain", gm_plain, "unit mask instead of random phases");
  gen_mask->add_option("--out", gm_out)->required();

  // gen-scheme
  auto* gen_scheme = app.add_subcommand("gen-scheme", "generate a projection scheme");
  int gs_n = 3;
  std::string gs_family = "z", gs_rotation, gs_extra, gs_out;
  gen_scheme->add_option("--n", gs_n)->required();
  gen_scheme->add_option("--family", gs_family)->check(CLI::IsMember({"x", "y", "z"}));
  gen_scheme->add_option("--seed", seed);
  gen_scheme->add_option("--rotation", gs_rotation, "gamma,m: fixed-angle rotation slopes");
  gen_scheme->add_option("--extra", gs_extra, "a0,b0: attach the extra orthogonal direction");
  gen_scheme->add_option("--out", gs_out)->required();

  // check-scheme
  auto* check_scheme = app.add_subcommand("check-scheme", "test the distinct-nodes condition");
  std::string cs_scheme, cs_report;
  double cs_tol = 1e-9;
  check_scheme->add_option("--scheme", cs_scheme)->required();
  check_scheme->add_option("--tol", cs_tol);
  check_scheme->add_option("--report", cs_report)->required();

  // project
  auto* project_cmd = app.add_subcommand("project", "X-ray transforms along a scheme");
  std::string pr_object, pr_scheme, pr_out_dir;
  project_cmd->add_option("--object", pr_object)->required();
  project_cmd->add_option("--scheme", pr_scheme)->required();
  project_cmd->add_option("--out-dir", pr_out_dir)->required();

  // diffract
  auto* diffract_cmd = app.add_subcommand("diffract", "coded diffraction patterns");
  std::string df_dir, df_mask, df_grid = "regular", df_out_dir;
  diffract_cmd->add_option("--projections-dir", df_dir)->required();
  diffract_cmd->add_option("--mask", df_mask)->required();
  diffract_cmd->add_option("--grid", df_grid, "regular | irregular:<csv of wx,wy rows>");
  diffract_cmd->add_option("--out-dir", df_out_dir)->required();

  // recover-autocorr
  auto* recover_cmd = app.add_subcommand("recover-autocorr", "invert a pattern to R(m)");
  std::string rc_pattern, rc_out;
  recover_cmd->add_option("--pattern", rc_pattern)->required();
  recover_cmd->add_option("--out", rc_out)->required();

  // verify-slice
  auto* slice_cmd = app.add_subcommand("verify-slice", "Fourier slice residuals");
  std::string vs_object, vs_scheme, vs_report;
  slice_cmd->add_option("--object", vs_object)->required();
  slice_cmd->add_option("--scheme", vs_scheme)->required();
  slice_cmd->add_option("--report", vs_report)->required();

  // reconstruct
  auto* rec_cmd = app.add_subcommand("reconstruct", "exact CT reconstruction");
  std::string re_dir, re_scheme, re_out, re_report;
  double re_tol = 1e-8;
  rec_cmd->add_option("--projections-dir", re_dir)->required();
  rec_cmd->add_option("--scheme", re_scheme)->required();
  rec_cmd->add_option("--tol", re_tol);
  rec_cmd->add_option("--out", re_out)->required();
  rec_cmd->add_option("--report", re_report)->required();

  // classify-ambiguity
  auto* amb_cmd = app.add_subcommand("classify-ambiguity", "direction-independent data check");
  std::string am_dir, am_scheme, am_report;
  amb_cmd->add_option("--projections-dir", am_dir)->required();
  amb_cmd->add_option("--scheme", am_scheme)->required();
  amb_cmd->add_option("--report", am_report)->required();

  // verify-uniqueness
  auto* uniq_cmd = app.add_subcommand("verify-uniqueness", "invariance suite on coded data");
  std::string vu_object, vu_mask, vu_scheme, vu_report;
  uniq_cmd->add_option("--object", vu_object)->required();
  uniq_cmd->add_option("--mask", vu_mask)->required();
  uniq_cmd->add_option("--scheme", vu_scheme)->required();
  uniq_cmd->add_option("--report", vu_report)->required();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive finite-alphabet oracle");
  std::string or_support, or_alphabet, or_mask, or_scheme, or_report;
  double or_budget = 1e7;
  oracle_cmd->add_option("--support-file", or_support)->required();
  oracle_cmd->add_option("--alphabet-file", or_alphabet)->required();
  oracle_cmd->add_option("--mask", or_mask)->required();
  oracle_cmd->add_option("--scheme", or_scheme)->required();
  oracle_cmd->add_option("--budget", or_budget);
  oracle_cmd->add_option("--report", or_report)->required();

  // physics-demo
  auto* phys_cmd = app.add_subcommand("physics-demo", "wave-model consistency checks");
  std::string ph_object, ph_report;
  double ph_kappa = kTwoPi;
  phys_cmd->add_option("--object", ph_object)->required();
  phys_cmd->add_option("--kappa", ph_kappa);
  phys_cmd->add_option("--seed", seed);
  phys_cmd->add_option("--report", ph_report)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (*gen_object) {
      const int p = go_p > 0 ? go_p : 2 * go_n - 1;
      const Ensemble kind = go_kind == "gaussian" ? Ensemble::ComplexGaussian
                            : go_kind == "phases" ? Ensemble::UnitPhases
                                                  : Ensemble::FiniteAlphabet;
      const std::vector<Complex> alphabet = {0.0, 1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
      write_file(go_out, encode(random_object(go_n, p, kind, seed, alphabet)));
    } else if (*gen_mask) {
      write_file(gm_out, encode(gm_plain ? plain_mask(gm_p) : random_mask(gm_p, seed)));
    } else if (*gen_scheme) {
      const Axis family = gs_family == "x" ? Axis::X : gs_family == "y" ? Axis::Y : Axis::Z;
      Scheme s;
      if (!gs_rotation.empty()) {
        const auto gm = parse_pair(gs_rotation, "--rotation");
        s = rotation_scheme(gm[0], static_cast<int>(gm[1]), family, gs_n);
      } else {
        s = random_scheme(gs_n, family, seed);
      }
      if (!gs_extra.empty()) s = tom2_scheme(s, parse_pair(gs_extra, "--extra"));
      write_file(gs_out, encode(s));
    } else if (*check_scheme) {
      const Scheme s = decode_scheme(read_file(cs_scheme));
      const StrongCTReport rep = check_strong_ct(s, cs_tol);
      const bool ok = emit_report(
          cs_report,
          {{"strong_ct_worst_count", static_cast<double>(rep.worst_count),
            static_cast<double>(s.n), rep.pass}});
      if (!ok) return 1;
    } else if (*project_cmd) {
      const Object3D f = decode_object(read_file(pr_object));
      const Scheme s = decode_scheme(read_file(pr_scheme));
      fs::create_directories(pr_out_dir);
      const auto dirs = s.directions();
      for (std::size_t t = 0; t < dirs.size(); ++t) {
        char name[32];
        std::snprintf(name, sizeof(name), "proj_%02zu.tph", t);
        write_file(fs::path(pr_out_dir) / name, encode(project(f, dirs[t])));
      }
    } else if (*diffract_cmd) {
      const Mask2D mu = decode_mask(read_file(df_mask));
      fs::create_directories(df_out_dir);
      FrequencyGrid grid = FrequencyGrid::regular_grid(mu.p());
      if (df_grid != "regular") {
        if (df_grid.rfind("irregular:", 0) != 0)
          throw CLI::ValidationError("--grid must be regular or irregular:<file>");
        std::vector<Eigen::Vector2d> nodes;
        const std::string text = read_file(df_grid.substr(10));
        std::size_t pos = 0;
        while (pos < text.size()) {
          const std::size_t eol = std::min(text.find('\n', pos), text.size());
          const std::string line = text.substr(pos, eol - pos);
          pos = eol + 1;
          if (line.empty()) continue;
          const auto ab = parse_pair(line, "grid node");
          nodes.emplace_back(ab[0], ab[1]);
        }
        grid = FrequencyGrid::irregular(std::move(nodes));
      }
      std::size_t t = 0;
      for (const fs::path& f : sorted_files(df_dir)) {
        DiffractionPattern pat =
            diffraction_pattern(apply_mask(decode_projection(read_file(f)), mu), grid);
        pat.mask_seed = mu.seed;
        char name[32];
        std::snprintf(name, sizeof(name), "pattern_%02zu.tph", t++);
        write_file(fs::path(df_out_dir) / name, encode(pat));
      }
    } else if (*recover_cmd) {
      const DiffractionPattern pat = decode_pattern(read_file(rc_pattern));
      const RecoveredAutocorrelation rec = recover_autocorrelation(pat, pat.p);
      write_file(rc_out, encode(rec.values));
      std::printf("condition: %.17g%s\n", rec.condition,
                  rec.ill_conditioned ? " (ill-conditioned)" : "");
    } else if (*slice_cmd) {
      const Object3D f = decode_object(read_file(vs_object));
      const Scheme s = decode_scheme(read_file(vs_scheme));
      std::vector<ReportRow> rows;
      const auto dirs = s.directions();
      for (std::size_t t = 0; t < dirs.size(); ++t) {
        const double r = fourier_slice_residual(f, dirs[t]);
        rows.push_back({"slice_residual_" + std::to_string(t), r, 1e-9, r <= 1e-9});
      }
      if (!emit_report(vs_report, rows)) return 1;
    } else if (*rec_cmd) {
      const Scheme s = decode_scheme(read_file(re_scheme));
      const std::vector<Projection2D> projections = load_projections(re_dir);
      const Reconstruction rec = ct_reconstruct(projections, s, re_tol);
      write_file(re_out, encode(rec.object));
      double reproj = 0.0;
      const auto dirs = s.directions();
      for (std::size_t t = 0; t < projections.size() && t < dirs.size(); ++t)
        reproj = std::max(reproj, (project(rec.object, dirs[t]).values() -
                                   projections[t].values())
                                      .cwiseAbs()
                                      .maxCoeff());
      const double thr = re_tol * (1.0 + rec.max_condition);
      const bool ok = emit_report(
          re_report, {{"reprojection_error", reproj, thr, reproj <= thr},
                      {"condition_estimate", rec.max_condition, 1e8, rec.max_condition <= 1e8}});
      if (!ok) return 2;
    } else if (*amb_cmd) {
      const Scheme s = decode_scheme(read_file(am_scheme));
      const AmbiguityVerdict v = ambiguity_classify(load_projections(am_dir), s);
      std::printf("verdict: %s (%s)\n", to_string(v.kind), v.note.c_str());
      emit_report(am_report,
                  {{"base_spectrum_spread", v.base_spectrum_spread, 1e-8,
                    v.kind == AmbiguityKind::UniqueUpToPhase},
                   {std::string("verdict_is_") + to_string(v.kind), 1.0, 1.0, true}});
    } else if (*uniq_cmd) {
      const Object3D f = decode_object(read_file(vu_object));
      const Mask2D mu = decode_mask(read_file(vu_mask));
      const Scheme s = decode_scheme(read_file(vu_scheme));
      const InvarianceReport rep = invariance_suite(f, mu, s);
      const bool ok = emit_report(
          vu_report,
          {{"global_phase_deviation", rep.global_phase_deviation, 1e-10,
            rep.global_phase_deviation <= 1e-10},
           {"plain_twin_deviation", rep.plain_twin_deviation, 1e-10,
            rep.plain_twin_deviation <= 1e-10},
           {"coded_twin_witness_hits", static_cast<double>(rep.twin_witness_hits),
            0.99 * rep.twin_trials,
            rep.twin_witness_hits >= static_cast<int>(0.99 * rep.twin_trials)}});
      if (!ok) return 1;
    } else if (*oracle_cmd) {
      const Mask2D mu = decode_mask(read_file(or_mask));
      const Scheme s = decode_scheme(read_file(or_scheme));
      std::vector<Eigen::Vector3i> support;
      std::vector<Complex> alphabet;
      {
        const std::string text = read_file(or_support);
        int x, y, z;
        const char* ptr = text.c_str();
        int consumed = 0;
        while (std::sscanf(ptr, "%d %d %d %n", &x, &y, &z, &consumed) == 3) {
          support.push_back({x, y, z});
          ptr += consumed;
        }
        const std::string atext = read_file(or_alphabet);
        double re, im;
        ptr = atext.c_str();
        while (std::sscanf(ptr, "%lf %lf %n", &re, &im, &consumed) == 2) {
          alphabet.emplace_back(re, im);
          ptr += consumed;
        }
      }
      OracleOptions opts;
      opts.budget = static_cast<std::size_t>(or_budget);
      const OracleReport rep = oracle_with_rerun(support, alphabet, mu, s, opts);
      std::size_t impure = 0;
      for (const OracleClass& c : rep.classes)
        if (!c.phase_orbit_pure) ++impure;
      const bool ok = emit_report(
          or_report,
          {{"admissible_objects", static_cast<double>(rep.admissible), 0.0, true},
           {"classes", static_cast<double>(rep.classes.size()), 0.0, true},
           {"impure_classes", static_cast<double>(impure), 0.0, impure == 0},
           {"anomalies", static_cast<double>(rep.anomalies.size()), 0.0,
            rep.anomalies.empty()}});
      for (const OracleAnomaly& a : rep.anomalies)
        std::printf("anomaly: %s\n", a.what.c_str());
      if (!ok) return 1;
    } else if (*phys_cmd) {
      const Object3D f = decode_object(read_file(ph_object));
      const double br = born_rytov_consistency(f, ph_kappa);
      const Mask2D mu = random_mask(f.p(), seed);
      const IntensityDecomposition dec = intensity_decomposition(
          mu, project(f, {Axis::Z, 0.0, 0.0}), ph_kappa,
          FrequencyGrid::regular_grid(f.p()));
      const FresnelReport fr = fresnel_validity(1e-4, 1e-10, 1e-2);
      const bool ok = emit_report(
          ph_report, {{"born_rytov_residual", br, 1e-10, br <= 1e-10},
                      {"intensity_decomposition_residual", dec.residual, 1e-10,
                       dec.residual <= 1e-10},
                      {"fresnel_number", fr.fresnel_number, 10.0, fr.valid}});
      if (!ok) return 1;
    }
  } catch (const SingularNodes& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const InconsistentSpectrum& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 64;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
