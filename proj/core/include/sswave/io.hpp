#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"

// Artifact I/O: atomic file writes, snapshot save/load (JSON header plus a
// float64 sidecar, or a plain CSV in text mode), CSV tables with exact
// round-trip formatting, and the run manifest.

namespace sswave {

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a_hash(const std::string& bytes);

// Writes to a temporary file in the target directory, then renames into
// place, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

// %.17g: shortest fixed format that round-trips IEEE doubles.
std::string format_double(double v);

// Header row plus data rows, every cell through format_double.
void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

struct SnapshotMeta {
  double tau = 0.0;
  double p = 0.0;
  Vec3 a = Vec3::Zero();
  int N = 0;
  int L = 0;
};

// Writes <name>.json (format tag, metadata, element count, sidecar name,
// FNV-1a hash of the payload) and <name>.f64 (component 1 then component 2,
// radial-major, little-endian float64). Text mode additionally writes
// <name>.csv with both components for portability; the snapshot stays
// loadable either way.
void save_snapshot(const std::string& dir, const std::string& name,
                   const SnapshotMeta& meta, const StatePair& state, bool text = false);

// Reads a binary-mode snapshot back and verifies the payload hash.
StatePair load_snapshot(const std::string& dir, const std::string& name,
                        SnapshotMeta* meta = nullptr);

// manifest.json: configuration echo, FNV-1a hash of the serialized
// configuration, library version and commit, and the wall time of the run.
void write_manifest(const std::string& dir, const nlohmann::json& config,
                    double wall_seconds);

// SSWAVE_WORKERS when set to a positive integer, else hardware concurrency.
int worker_count();

}  // namespace sswave
