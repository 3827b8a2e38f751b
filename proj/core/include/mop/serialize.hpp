#pragma once

#include <nlohmann/json_fwd.hpp>

#include "mop/biorth.hpp"
#include "mop/block_matrix.hpp"
#include "mop/christoffel.hpp"
#include "mop/measures.hpp"
#include "mop/spectral.hpp"
#include "mop/toda.hpp"

// JSON encodings of the domain types. Matrices are arrays of rows; complex
// numbers are {"re": ..., "im": ...}; polynomials are coefficient arrays in
// ascending powers.

namespace mop {

nlohmann::json to_json(const Eigen::MatrixXd& m);
nlohmann::json to_json(const Eigen::MatrixXcd& m);
nlohmann::json to_json(const MatrixPolynomial& p);
nlohmann::json to_json(const BlockMatrix& m);
nlohmann::json to_json(const SpectralData& s);
nlohmann::json to_json(const BiorthogonalSystem& s);
nlohmann::json to_json(const ConnectionData& c);

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
MatrixPolynomial poly_from_json(const nlohmann::json& j);
SpectralData spectral_from_json(const nlohmann::json& j);
BiorthogonalSystem system_from_json(const nlohmann::json& j);

/// Measure description, the CLI input format:
/// {"base": "chebyshev1", "params": {"alpha": ..., "beta": ...},
///  "p": 2, "factor": {"coeffs": [[[...]], ...]}}
MatrixMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MatrixMeasure& m);

TodaTimes toda_times_from_json(const nlohmann::json& j, int p);
nlohmann::json to_json(const TodaTimes& t);

}  // namespace mop
