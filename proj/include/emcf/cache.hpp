#pragma once

// On-disk digit and partial-quotient caches. Each file gets a sidecar
// "<file>.sha256" holding the hex digest of its bytes; reads verify it.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "emcf/logcomp.hpp"
#include "emcf/cf.hpp"

namespace emcf {

class CacheIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Writes the record and its sidecar; returns the digest.
std::string write_digit_file(const std::filesystem::path& path, const DigitRecord& record);
/// Reads and verifies a digit file. Throws CacheIntegrityError on a digest
/// mismatch, a missing sidecar or a malformed body.
DigitRecord read_digit_file(const std::filesystem::path& path);

struct CfFile {
  std::string constant;  // e.g. "log2/2"
  PartialQuotients terms;
};

std::string write_cf_file(const std::filesystem::path& path, const CfFile& file);
CfFile read_cf_file(const std::filesystem::path& path);

/// Identifier of (log 2)/(2N) in CF files.
std::string cf_constant_id(const BigInt& N);

/// Directory-backed cache keyed by constant and digit count.
class ArtifactCache {
 public:
  explicit ArtifactCache(std::filesystem::path dir);

  struct Digits {
    DigitRecord record;
    std::string hash;
    bool from_cache = false;
  };
  struct Terms {
    PartialQuotients terms;
    std::string hash;
    bool from_cache = false;
  };

  std::filesystem::path digit_path(const std::string& constant, long digits) const;
  std::filesystem::path cf_path(const BigInt& N, long digits) const;

  Digits digits(const std::string& constant, long digits, const LogOptions& options = {});
  /// Certified terms of (log 2)/(2N) from `digits` digits of log 2.
  Terms log2_terms(const BigInt& N, long digits, const DigitRecord& log2, CfMethod method, bool parallel = true);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace emcf
