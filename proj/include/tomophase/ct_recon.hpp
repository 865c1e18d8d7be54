#pragma once

#include "tomophase/schemes.hpp"
#include "tomophase/spectral.hpp"

namespace tomophase {

struct Reconstruction {
  Object3D object;
  double max_condition;  // worst Vandermonde condition estimate over columns
};

/// Exact CT reconstruction from full (field) projections: per nonzero integer
/// frequency pair, samples the projection spectra on the slice planes, solves
/// the n x n Vandermonde column, then recovers each slice's missing DC value
/// from the support constraint.
Reconstruction ct_reconstruct(const std::vector<Projection2D>& projections,
                              const Scheme& s, double tol = 1e-8);

struct DcCompletion {
  Eigen::MatrixXcd slice;  // n x n, storage-indexed
  Complex dc;
  double outside_residual;
};

/// Given a p x p spectrum with the DC entry unknown (ignored), inverts the
/// 2D DFT with DC set to zero and determines the missing DC value by
/// least squares over all points outside Z_n^2, where the slice must vanish.
DcCompletion complete_dc_slice(const Eigen::MatrixXcd& spectrum, int n, int p, double tol);

enum class AmbiguityKind { UniqueUpToPhase, CommonProjectionAmbiguity, Inconsistent };

const char* to_string(AmbiguityKind k);

struct AmbiguityVerdict {
  AmbiguityKind kind;
  double base_spectrum_spread;  // max pointwise deviation between base spectra
  SupportClass extra_support;
  std::optional<Projection2D> common_projection;
  std::string note;
};

/// Classifies tom2-scheme data: direction-independent base projections either
/// force planar support (and the extra projection must then be a line object,
/// the surviving ambiguity) or refute themselves against the extra direction.
AmbiguityVerdict ambiguity_classify(const std::vector<Projection2D>& projections,
                                    const Scheme& s, double tol = 1e-8);

struct NullObject {
  Object3D object;          // unit-norm object with vanishing scheme projections
  double singular_value;    // smallest singular value of the constraint system
};

/// Necessity witness for (strongCT): for a deficient scheme, a null vector of
/// the per-column node system yields a nonzero object invisible to every
/// scheme direction.
NullObject deficiency_null_object(const Scheme& s, double node_tol = 1e-9);

}  // namespace tomophase
