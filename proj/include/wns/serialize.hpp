#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "wns/analyticity.hpp"
#include "wns/calibration.hpp"
#include "wns/field.hpp"
#include "wns/mild_solver.hpp"
#include "wns/norms.hpp"
#include "wns/trajectory.hpp"

namespace wns {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kConventionTag = "e^{ikx}/unitary-2π";

// Field JSON layout:
//   {"format": "wns-field", "version": 1, "dims", "n", "components",
//    "convention": kConventionTag, "order": "lexicographic",
//    "coefficients": [re, im, re, im, ...], "metadata": {...}}
// Coefficients run over wavevectors in GridSpec order with the components
// of each wavevector contiguous.
json field_to_json(const SpectralField& f, const json& metadata = json::object());
SpectralField field_from_json(const json& j);

// Binary layout (little-endian):
//   char[4] magic "WNSF" | u32 version | u32 dims | u32 n | u32 components
//   u32 len + convention tag | u32 len + metadata JSON text
//   u64 count | f64[2 * count] interleaved re/im
// Trajectories use magic "WNST" and, after the metadata, u64 samples,
// f64[samples] times, then the coefficient block of each sample.
void write_field_binary(std::ostream& os, const SpectralField& f,
                        const json& metadata = json::object());
SpectralField read_field_binary(std::istream& is, json* metadata = nullptr);

void write_trajectory_binary(std::ostream& os, const Trajectory& v,
                             const json& metadata = json::object());
Trajectory read_trajectory_binary(std::istream& is, json* metadata = nullptr);

json to_json(const NormReport& r);
json to_json(const PicardReport& r);
json to_json(const ConstantEstimate& c);
json to_json(const DiscretenessReport& r);
json to_json(const DependenceReport& r);

/// Radius CSV columns: t, rho, fit_rms, shells_used, bound_sqrt,
/// bound_linear, bound, weighted_norm_sqrt, weighted_norm_linear, margin,
/// crossover. The weighted norms are the fixed-time X^-1 norms of
/// e^{phi(t)|D|} v(t); margin = rho - bound; invalid fits print nan.
/// Lines starting with '#' carry provenance.
void write_radius_csv(std::ostream& os, const RadiusSeries& s, const json& provenance);

/// Shortest round-trip decimal form of a double ("nan", "inf" for
/// non-finite values).
std::string format_double(double x);

}  // namespace wns
