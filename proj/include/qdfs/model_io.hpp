#pragma once

#include <string>

#include "qdfs/model.hpp"

namespace qdfs {

// JSON model files, format tag "qdfs-model/1". Complex numbers are [re, im]
// pairs; matrices are flat row-major arrays of pairs. See README for the
// schema. Parse failures throw ParseError with the offending field path in
// the message.
MasterEquationModel parse_model(const std::string& text);
MasterEquationModel load_model(const std::string& path);
std::string serialize_model(const MasterEquationModel& m);
void save_model(const MasterEquationModel& m, const std::string& path);

// State files ("qdfs-state/1"): either a ket ("psi") or a density matrix
// ("rho").
ComplexMatrix load_state(const std::string& path, std::size_t expected_dim);

} // namespace qdfs
