#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tomophase/diffraction.hpp"
#include "tomophase/schemes.hpp"

namespace tomophase {

/// Artifact container: the line "TOMOPHASE 1", one line of JSON metadata,
/// then the payload as raw little-endian 64-bit floats (complex values as
/// re,im pairs) in storage index order. Round trips are bit-exact.

std::string encode(const Object3D& f);
std::string encode(const Mask2D& mu);
std::string encode(const Scheme& s);
std::string encode(const Projection2D& g);
std::string encode(const DiffractionPattern& pat);
std::string encode(const Autocorrelation2D& r);  // stored as a projection of side 2p-1

std::string artifact_kind(const std::string& bytes);

Object3D decode_object(const std::string& bytes);
Mask2D decode_mask(const std::string& bytes);
Scheme decode_scheme(const std::string& bytes);
Projection2D decode_projection(const std::string& bytes);
DiffractionPattern decode_pattern(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

struct ReportRow {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

/// Flat CSV, one row per check; values printed with %.17g so reruns are
/// byte-identical.
std::string report_csv(const std::vector<ReportRow>& rows);
void write_report(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

}  // namespace tomophase
