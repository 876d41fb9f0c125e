#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glx/comparison_ode.hpp"
#include "glx/diagnostics.hpp"
#include "glx/dynamics.hpp"
#include "glx/gn.hpp"

#include "json.hpp"

namespace glx {

using Json = nlohmann::json;

// All artifact serialization is lossless (shortest round-trip doubles in
// JSON, %.17g in CSV) and deterministic: identical inputs give identical
// bytes.

Json params_to_json(const PhysicalParams& params);
Json run_record_to_json(const RunRecord& run);
Json derived_constants_to_json(const DerivedConstants& k);
Json extinction_report_to_json(const ExtinctionReport& report);
Json gn_estimate_to_json(const GnEstimate& estimate);

// Columns: t, mass, grad_norm, lm1_norm, lp1_norm, envelope, residual.
// Envelope needs the constants (nan otherwise); residual comes from the
// ledger rows matched by snapshot index (nan on the endpoints).
std::string trajectory_csv(const RunRecord& run, const DerivedConstants* k,
                           const std::vector<EnergyLedgerRow>* ledger);

// Columns: t, mass_sq, grad, lm1, lp1, gamma, forcing, residual.
std::string ledger_csv(const std::vector<EnergyLedgerRow>& rows);

std::string scalar_trajectory_csv(const ScalarTrajectory& z);

// Columns: t, z1, z2, lhs, rhs with s fixed at the first sample.
std::string stability_csv(const ScalarTrajectory& z1, const ScalarTrajectory& z2,
                          const TimeFunction& g1, const TimeFunction& g2);

void write_text(const std::string& path, const std::string& content);
std::string format_double(double v);  // %.17g

}  // namespace glx
