#include "sswave/io.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#ifndef SSWAVE_VERSION
#define SSWAVE_VERSION "0.0.0"
#endif
#ifndef SSWAVE_GIT_SHA
#define SSWAVE_GIT_SHA "unknown"
#endif

namespace sswave {

namespace {

namespace fs = std::filesystem;

std::string payload_bytes(const StatePair& state) {
  const auto count = static_cast<size_t>(state.f1.size() + state.f2.size());
  std::string bytes(count * sizeof(double), '\0');
  auto put = [&](const Eigen::VectorXd& v, size_t offset) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      double d = v[i];
      std::uint64_t u;
      std::memcpy(&u, &d, sizeof(u));
      if constexpr (std::endian::native == std::endian::big) {
        u = __builtin_bswap64(u);
      }
      std::memcpy(bytes.data() + (offset + static_cast<size_t>(i)) * sizeof(double), &u,
                  sizeof(u));
    }
  };
  put(state.f1, 0);
  put(state.f2, static_cast<size_t>(state.f1.size()));
  return bytes;
}

void payload_decode(const std::string& bytes, StatePair& state) {
  const size_t n = bytes.size() / sizeof(double);
  const size_t half = n / 2;
  state.f1.resize(static_cast<Eigen::Index>(half));
  state.f2.resize(static_cast<Eigen::Index>(n - half));
  for (size_t i = 0; i < n; ++i) {
    std::uint64_t u;
    std::memcpy(&u, bytes.data() + i * sizeof(double), sizeof(u));
    if constexpr (std::endian::native == std::endian::big) {
      u = __builtin_bswap64(u);
    }
    double d;
    std::memcpy(&d, &u, sizeof(d));
    if (i < half)
      state.f1[static_cast<Eigen::Index>(i)] = d;
    else
      state.f2[static_cast<Eigen::Index>(i - half)] = d;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot open " + path);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

}  // namespace

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("io: cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("io: short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("io: csv row width does not match header");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

void save_snapshot(const std::string& dir, const std::string& name,
                   const SnapshotMeta& meta, const StatePair& state, bool text) {
  const fs::path base = fs::path(dir) / name;
  if (text) {
    // One row per node: component index, flat node index, value.
    std::string out = "component,node,value\n";
    for (int c = 0; c < 2; ++c) {
      const Eigen::VectorXd& f = c == 0 ? state.f1 : state.f2;
      for (Eigen::Index i = 0; i < f.size(); ++i) {
        out += std::to_string(c + 1);
        out += ',';
        out += std::to_string(i);
        out += ',';
        out += format_double(f[i]);
        out += '\n';
      }
    }
    write_file_atomic((base.string() + ".csv"), out);
  }

  const std::string payload = payload_bytes(state);
  nlohmann::json head;
  head["format"] = "sswave-state";
  head["version"] = SSWAVE_VERSION;
  head["byte_order"] = "little";
  head["tau"] = meta.tau;
  head["p"] = meta.p;
  head["a"] = {meta.a[0], meta.a[1], meta.a[2]};
  head["N"] = meta.N;
  head["L"] = meta.L;
  head["count1"] = state.f1.size();
  head["count2"] = state.f2.size();
  head["sidecar"] = name + ".f64";
  head["payload_fnv1a"] = fnv1a_hash(payload);
  write_file_atomic(base.string() + ".f64", payload);
  write_file_atomic(base.string() + ".json", head.dump(2) + "\n");
}

StatePair load_snapshot(const std::string& dir, const std::string& name,
                        SnapshotMeta* meta) {
  const fs::path base = fs::path(dir) / name;
  const nlohmann::json head = nlohmann::json::parse(read_file(base.string() + ".json"));
  if (head.at("format") != "sswave-state")
    throw std::runtime_error("io: not a state snapshot: " + name);
  const std::string payload =
      read_file((fs::path(dir) / head.at("sidecar").get<std::string>()).string());
  if (fnv1a_hash(payload) != head.at("payload_fnv1a").get<std::uint64_t>())
    throw std::runtime_error("io: payload hash mismatch in " + name);

  StatePair state;
  payload_decode(payload, state);
  const auto c1 = head.at("count1").get<Eigen::Index>();
  const auto c2 = head.at("count2").get<Eigen::Index>();
  if (state.f1.size() != c1 || state.f2.size() != c2)
    throw std::runtime_error("io: payload size mismatch in " + name);
  if (meta) {
    meta->tau = head.at("tau").get<double>();
    meta->p = head.at("p").get<double>();
    const auto a = head.at("a");
    meta->a = Vec3(a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>());
    meta->N = head.at("N").get<int>();
    meta->L = head.at("L").get<int>();
  }
  return state;
}

void write_manifest(const std::string& dir, const nlohmann::json& config,
                    double wall_seconds) {
  nlohmann::json m;
  m["config"] = config;
  m["config_fnv1a"] = fnv1a_hash(config.dump());
  m["version"] = SSWAVE_VERSION;
  m["commit"] = SSWAVE_GIT_SHA;
  m["wall_seconds"] = wall_seconds;
  write_file_atomic((fs::path(dir) / "manifest.json").string(), m.dump(2) + "\n");
}

int worker_count() {
  if (const char* env = std::getenv("SSWAVE_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

}  // namespace sswave
