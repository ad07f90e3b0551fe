#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "widomlab/cli.hpp"

namespace widomlab::cli {

namespace {

constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

// Advisory-locked file handle; a held lock is released on destruction.
class LockedFile {
 public:
  LockedFile(const std::string& path, int operation) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) return;
    // Bounded wait, then give up (caller degrades gracefully).
    for (int attempt = 0; attempt < 40; ++attempt) {
      if (::flock(fd_, operation | LOCK_NB) == 0) {
        locked_ = true;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(25));
    }
  }
  ~LockedFile() {
    if (locked_) ::flock(fd_, LOCK_UN);
    if (fd_ >= 0) ::close(fd_);
  }
  bool locked() const { return locked_; }

 private:
  int fd_ = -1;
  bool locked_ = false;
};

std::string double_bits_hex(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(bits));
  return buf;
}

bool double_from_hex(const std::string& s, double* out) {
  if (s.size() != 16) return false;
  std::uint64_t bits = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'f')
      d = c - 'a' + 10;
    else
      return false;
    bits = bits << 4 | static_cast<std::uint64_t>(d);
  }
  std::memcpy(out, &bits, sizeof *out);
  return true;
}

const char* method_name(trace::TraceMethod m) {
  switch (m) {
    case trace::TraceMethod::exact: return "exact";
    case trace::TraceMethod::radial: return "radial";
    case trace::TraceMethod::overlap: return "overlap";
    case trace::TraceMethod::nystrom: return "nystrom";
    case trace::TraceMethod::mc: return "mc";
  }
  return "?";
}

bool method_from(const std::string& s, trace::TraceMethod* out) {
  for (auto m : {trace::TraceMethod::exact, trace::TraceMethod::radial,
                 trace::TraceMethod::overlap, trace::TraceMethod::nystrom,
                 trace::TraceMethod::mc}) {
    if (s == method_name(m)) {
      *out = m;
      return true;
    }
  }
  return false;
}

}  // namespace

CacheKey cache_key(const std::string& material) {
  // Two FNV-1a streams with distinct offsets form the 128-bit key.
  CacheKey k;
  k.hi = 0xcbf29ce484222325ULL;
  k.lo = 0x84222325cbf29ce4ULL;
  for (unsigned char c : material) {
    k.hi = (k.hi ^ c) * kFnvPrime;
    k.lo = (k.lo ^ (c ^ 0x5a)) * kFnvPrime;
  }
  return k;
}

std::string CacheKey::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

TraceCache::TraceCache(std::string directory, bool enabled)
    : dir_(std::move(directory)), enabled_(enabled) {
  if (!enabled_) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    std::cerr << "widomlab: cannot create cache directory " << dir_ << ", caching disabled\n";
    enabled_ = false;
    return;
  }
  record_path_ = dir_ + "/widomlab_cache.rec";
  lock_path_ = dir_ + "/widomlab_cache.lock";
}

std::optional<trace::TraceResult> TraceCache::get(const CacheKey& key) const {
  if (!enabled_) return std::nullopt;
  LockedFile lock(lock_path_, LOCK_SH);
  if (!lock.locked()) {
    std::cerr << "widomlab: cache lock timeout, skipping lookup\n";
    return std::nullopt;
  }
  std::ifstream in(record_path_);
  if (!in) return std::nullopt;
  const std::string want = key.hex();
  std::string line;
  std::optional<trace::TraceResult> found;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string k, vhex, ehex, rhex, method;
    if (!(ls >> k >> vhex >> ehex >> rhex >> method)) {
      std::cerr << "widomlab: corrupt cache record ignored\n";
      continue;
    }
    if (k != want) continue;
    trace::TraceResult res;
    if (!double_from_hex(vhex, &res.value) || !double_from_hex(ehex, &res.error_estimate) ||
        !double_from_hex(rhex, &res.R) || !method_from(method, &res.method)) {
      std::cerr << "widomlab: corrupt cache record ignored\n";
      continue;
    }
    res.provenance = "cache";
    found = res;  // last record wins (append-only file)
  }
  return found;
}

void TraceCache::put(const CacheKey& key, const trace::TraceResult& value) const {
  if (!enabled_) return;
  LockedFile lock(lock_path_, LOCK_EX);
  if (!lock.locked()) {
    std::cerr << "widomlab: cache lock timeout, result not cached\n";
    return;
  }
  std::ofstream out(record_path_, std::ios::app);
  out << key.hex() << ' ' << double_bits_hex(value.value) << ' '
      << double_bits_hex(value.error_estimate) << ' ' << double_bits_hex(value.R) << ' '
      << method_name(value.method) << '\n';
}

}  // namespace widomlab::cli
