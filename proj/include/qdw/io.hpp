#pragma once

#include <string>
#include <vector>

#include "qdw/dynamics.hpp"
#include "qdw/hamiltonian.hpp"

namespace qdw {

// Shortest round-trip decimal representation of a double (17 significant
// digits, general format).
std::string fmt17(double v);

// Write `content` to `path` atomically: write to path + ".tmp" then rename.
// Creates parent directories. Throws io_error on failure.
void write_text_atomic(const std::string& path, const std::string& content);

// CSV serialization of a trajectory. Columns:
//   t_s, p_ll, p_lr, p_rl, p_rr, entropy_bits, concurrence, concurrence_sq
// plus a trailing `envelope` column when the trajectory carries one.
std::string trajectory_csv(const Trajectory& traj);

} // namespace qdw
