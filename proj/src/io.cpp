#include "tomophase/io.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <json.hpp>

namespace tomophase {

namespace {

using nlohmann::json;

constexpr const char* kMagic = "TOMOPHASE 1\n";

void append_doubles(std::string& out, const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(data[i]);
    for (int b = 0; b < 8; ++b)
      out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
  }
}

void append_complexes(std::string& out, const Complex* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double re_im[2] = {data[i].real(), data[i].imag()};
    append_doubles(out, re_im, 2);
  }
}

std::string assemble(const json& meta, const std::string& payload) {
  std::string out = kMagic;
  out += meta.dump();
  out += '\n';
  out += payload;
  return out;
}

/// Split into metadata and payload view; throws on bad magic or truncation.
struct Parsed {
  json meta;
  const char* payload;
  std::size_t payload_size;
  std::size_t payload_offset;
};

Parsed parse(const std::string& bytes) {
  const std::size_t magic_len = std::string(kMagic).size();
  if (bytes.size() < magic_len || bytes.compare(0, 10, "TOMOPHASE ") != 0)
    throw MalformedFile("bad magic at offset 0");
  if (bytes.compare(0, magic_len, kMagic) != 0)
    throw VersionMismatch("unsupported format version at offset 10");
  const std::size_t nl = bytes.find('\n', magic_len);
  if (nl == std::string::npos)
    throw MalformedFile("unterminated metadata line at offset " + std::to_string(magic_len));
  const json meta = json::parse(bytes.substr(magic_len, nl - magic_len), nullptr, false);
  if (meta.is_discarded())
    throw MalformedFile("invalid metadata JSON at offset " + std::to_string(magic_len));
  return {meta, bytes.data() + nl + 1, bytes.size() - nl - 1, nl + 1};
}

std::vector<double> take_doubles(const Parsed& p, std::size_t count) {
  if (p.payload_size != count * 8)
    throw MalformedFile("payload truncated at offset " +
                        std::to_string(p.payload_offset + p.payload_size) + ": expected " +
                        std::to_string(count * 8) + " bytes");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
      bits |= static_cast<std::uint64_t>(
                  static_cast<unsigned char>(p.payload[i * 8 + static_cast<std::size_t>(b)]))
              << (8 * b);
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

std::string require_kind(const Parsed& p, const std::string& kind) {
  if (!p.meta.contains("kind") || !p.meta["kind"].is_string())
    throw MalformedFile("missing kind in metadata");
  const std::string got = p.meta["kind"];
  if (got != kind) throw MalformedFile("expected a " + kind + " file, found " + got);
  return got;
}

int require_int(const Parsed& p, const char* key) {
  if (!p.meta.contains(key) || !p.meta[key].is_number_integer())
    throw MalformedFile(std::string("missing integer metadata field ") + key);
  return p.meta[key].get<int>();
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

Axis axis_from(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw MalformedFile("unknown axis name " + s);
}

}  // namespace

std::string encode(const Object3D& f) {
  const json meta = {{"kind", "object"}, {"n", f.n()}, {"p", f.p()}};
  std::string payload;
  append_complexes(payload, f.values().data(), static_cast<std::size_t>(f.values().size()));
  return assemble(meta, payload);
}

Object3D decode_object(const std::string& bytes) {
  const Parsed p = parse(bytes);
  require_kind(p, "object");
  const int n = require_int(p, "n");
  Object3D f(n, require_int(p, "p"));
  const std::vector<double> d =
      take_doubles(p, 2 * static_cast<std::size_t>(f.values().size()));
  for (Eigen::Index i = 0; i < f.values().size(); ++i)
    f.values()[i] = Complex(d[2 * static_cast<std::size_t>(i)],
                            d[2 * static_cast<std::size_t>(i) + 1]);
  return f;
}

std::string encode(const Mask2D& mu) {
  json meta = {{"kind", "mask"}, {"p", mu.p()}};
  if (mu.seed) meta["seed"] = *mu.seed;
  std::string payload;
  for (Eigen::Index r = 0; r < mu.phases().rows(); ++r)
    for (Eigen::Index c = 0; c < mu.phases().cols(); ++c) {
      const double v = mu.phases()(r, c);
      append_doubles(payload, &v, 1);
    }
  return assemble(meta, payload);
}

Mask2D decode_mask(const std::string& bytes) {
  const Parsed p = parse(bytes);
  require_kind(p, "mask");
  Mask2D mu(require_int(p, "p"));
  const std::vector<double> d = take_doubles(
      p, static_cast<std::size_t>(mu.phases().rows()) * mu.phases().cols());
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < mu.phases().rows(); ++r)
    for (Eigen::Index c = 0; c < mu.phases().cols(); ++c) mu.phases()(r, c) = d[i++];
  if (p.meta.contains("seed")) mu.seed = p.meta["seed"].get<std::uint64_t>();
  return mu;
}

std::string encode(const Scheme& s) {
  const json meta = {{"kind", "scheme"},
                     {"family", axis_name(s.family)},
                     {"n", s.n},
                     {"p", s.p},
                     {"m", static_cast<int>(s.slopes.size())},
                     {"has_extra", s.extra.has_value()}};
  std::string payload;
  for (const auto& ab : s.slopes) append_doubles(payload, ab.data(), 2);
  if (s.extra) append_doubles(payload, s.extra->data(), 2);
  return assemble(meta, payload);
}

Scheme decode_scheme(const std::string& bytes) {
  const Parsed p = parse(bytes);
  require_kind(p, "scheme");
  Scheme s;
  if (!p.meta.contains("family") || !p.meta["family"].is_string())
    throw MalformedFile("missing family in scheme metadata");
  s.family = axis_from(p.meta["family"]);
  s.n = require_int(p, "n");
  s.p = require_int(p, "p");
  const int m = require_int(p, "m");
  const bool has_extra = p.meta.value("has_extra", false);
  const std::vector<double> d =
      take_doubles(p, 2 * static_cast<std::size_t>(m) + (has_extra ? 2 : 0));
  for (int l = 0; l < m; ++l)
    s.slopes.push_back({d[2 * static_cast<std::size_t>(l)],
                        d[2 * static_cast<std::size_t>(l) + 1]});
  if (has_extra)
    s.extra = {{d[2 * static_cast<std::size_t>(m)], d[2 * static_cast<std::size_t>(m) + 1]}};
  return s;
}

std::string encode(const Projection2D& g) {
  json meta = {{"kind", "projection"}, {"p", g.p()}};
  if (g.provenance) {
    meta["family"] = axis_name(g.provenance->family);
    meta["alpha"] = g.provenance->alpha;
    meta["beta"] = g.provenance->beta;
  }
  std::string payload;
  for (Eigen::Index r = 0; r < g.values().rows(); ++r)
    for (Eigen::Index c = 0; c < g.values().cols(); ++c)
      append_complexes(payload, &g.values()(r, c), 1);
  return assemble(meta, payload);
}

Projection2D decode_projection(const std::string& bytes) {
  const Parsed p = parse(bytes);
  require_kind(p, "projection");
  Projection2D g(require_int(p, "p"));
  const std::vector<double> d = take_doubles(
      p, 2 * static_cast<std::size_t>(g.values().rows()) * g.values().cols());
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < g.values().rows(); ++r)
    for (Eigen::Index c = 0; c < g.values().cols(); ++c) {
      g.values()(r, c) = Complex(d[i], d[i + 1]);
      i += 2;
    }
  if (p.meta.contains("family"))
    g.provenance = Direction{axis_from(p.meta["family"]), p.meta["alpha"].get<double>(),
                             p.meta["beta"].get<double>()};
  return g;
}

std::string encode(const Autocorrelation2D& r) {
  Projection2D as_proj(r.side());
  as_proj.values() = r.values();
  return encode(as_proj);
}

std::string encode(const DiffractionPattern& pat) {
  json meta = {{"kind", "pattern"},
               {"p", pat.p},
               {"regular", pat.grid.regular},
               {"count", static_cast<int>(pat.grid.nodes.size())},
               {"forced", pat.forced}};
  if (pat.mask_seed) meta["mask_seed"] = *pat.mask_seed;
  std::string payload;
  for (const auto& w : pat.grid.nodes) append_doubles(payload, w.data(), 2);
  append_doubles(payload, pat.intensities.data(),
                 static_cast<std::size_t>(pat.intensities.size()));
  return assemble(meta, payload);
}

DiffractionPattern decode_pattern(const std::string& bytes) {
  const Parsed p = parse(bytes);
  require_kind(p, "pattern");
  DiffractionPattern pat;
  pat.p = require_int(p, "p");
  const int count = require_int(p, "count");
  const bool regular = p.meta.value("regular", false);
  pat.forced = p.meta.value("forced", false);
  if (p.meta.contains("mask_seed")) pat.mask_seed = p.meta["mask_seed"].get<std::uint64_t>();
  const std::vector<double> d = take_doubles(p, 3 * static_cast<std::size_t>(count));
  std::vector<Eigen::Vector2d> nodes;
  for (int i = 0; i < count; ++i)
    nodes.emplace_back(d[2 * static_cast<std::size_t>(i)],
                       d[2 * static_cast<std::size_t>(i) + 1]);
  pat.grid = regular ? FrequencyGrid::regular_grid(pat.p)
                     : FrequencyGrid::irregular(std::move(nodes));
  pat.intensities.resize(count);
  for (int i = 0; i < count; ++i) {
    const double v = d[2 * static_cast<std::size_t>(count) + static_cast<std::size_t>(i)];
    if (v < -1e-12) throw NegativeIntensity("pattern intensity below -1e-12 on decode");
    pat.intensities[i] = v;
  }
  return pat;
}

std::string artifact_kind(const std::string& bytes) {
  const Parsed p = parse(bytes);
  if (!p.meta.contains("kind") || !p.meta["kind"].is_string())
    throw MalformedFile("missing kind in metadata");
  return p.meta["kind"].get<std::string>();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MalformedFile("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw MalformedFile("short write to " + path.string());
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "name,value,threshold,pass\n";
  char buf[128];
  for (const ReportRow& r : rows) {
    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g,%s\n", r.value, r.threshold,
                  r.pass ? "true" : "false");
    out += r.name;
    out += buf;
  }
  return out;
}

void write_report(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
  write_file(path, report_csv(rows));
}

}  // namespace tomophase
