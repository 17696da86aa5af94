#include "emcf/cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "emcf/scanner.hpp"

namespace emcf {

namespace fs = std::filesystem;

namespace {

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path sidecar(const fs::path& path) { return fs::path(path.string() + ".sha256"); }

std::string write_with_sidecar(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << body;
  }
  fs::rename(tmp, path);
  const std::string digest = sha256_hex(body);
  std::ofstream(sidecar(path), std::ios::trunc) << digest << "\n";
  return digest;
}

std::string read_verified(const fs::path& path, const char* kind) {
  const std::string body = read_all(path);
  if (!fs::exists(sidecar(path))) throw CacheIntegrityError(std::string(kind) + " hash missing for " + path.string());
  std::string expected = read_all(sidecar(path));
  while (!expected.empty() && (expected.back() == '\n' || expected.back() == ' ')) expected.pop_back();
  if (expected != sha256_hex(body)) throw CacheIntegrityError(std::string(kind) + " hash mismatch for " + path.string());
  return body;
}

// "key=value" field of a header line.
std::string field(const std::string& header, const std::string& key) {
  std::istringstream in(header);
  std::string tok;
  while (in >> tok)
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  throw CacheIntegrityError("header lacks " + key + ": " + header);
}

std::string file_safe(std::string s) {
  for (char& c : s)
    if (c == '/' || c == ':') c = '_';
  return s;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_all(path)); }

std::string write_digit_file(const fs::path& path, const DigitRecord& record) {
  std::string body = "constant=" + record.constant + " digits=" + std::to_string(record.digits) + "\n";
  body += record.expansion;
  body += "\n";
  return write_with_sidecar(path, body);
}

DigitRecord read_digit_file(const fs::path& path) {
  const std::string body = read_verified(path, "digit-file");
  const auto nl = body.find('\n');
  if (nl == std::string::npos) throw CacheIntegrityError("digit file has no header: " + path.string());
  const std::string header = body.substr(0, nl);
  DigitRecord rec;
  rec.constant = field(header, "constant");
  rec.digits = std::stol(field(header, "digits"));
  rec.expansion = body.substr(nl + 1);
  while (!rec.expansion.empty() && (rec.expansion.back() == '\n' || rec.expansion.back() == '\r'))
    rec.expansion.pop_back();
  const auto dot = rec.expansion.find('.');
  if (dot == std::string::npos || rec.expansion.size() - dot - 1 != static_cast<std::size_t>(rec.digits + 2))
    throw CacheIntegrityError("digit file body does not match its header: " + path.string());
  rec.interval();  // validates the digit string
  return rec;
}

std::string write_cf_file(const fs::path& path, const CfFile& file) {
  const std::size_t n = file.terms.certified_count();
  std::string body = "cf constant=" + file.constant + " certified=" + std::to_string(n) + "\n";
  body.reserve(body.size() + n * 4);
  for (std::size_t i = 0; i < n; ++i) {
    body += file.terms.is_small(i) ? std::to_string(file.terms.word(i)) : file.terms.at(i).get_str();
    body += '\n';
  }
  return write_with_sidecar(path, body);
}

CfFile read_cf_file(const fs::path& path) {
  const std::string body = read_verified(path, "cf-file");
  std::istringstream in(body);
  std::string header;
  std::getline(in, header);
  if (header.rfind("cf ", 0) != 0) throw CacheIntegrityError("not a CF file: " + path.string());
  CfFile out;
  out.constant = field(header, "constant");
  const std::size_t n = std::stoull(field(header, "certified"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.size() < 20) {
      out.terms.push_back(static_cast<std::uint64_t>(std::stoull(line)));
    } else {
      out.terms.push_back(parse_bigint(line));
    }
  }
  if (out.terms.size() != n) throw CacheIntegrityError("CF file term count does not match its header");
  out.terms.set_certified_count(n);
  return out;
}

std::string cf_constant_id(const BigInt& N) { return "log2/" + BigInt(2 * N).get_str(); }

ArtifactCache::ArtifactCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path ArtifactCache::digit_path(const std::string& constant, long digits) const {
  return dir_ / (file_safe(constant) + "_" + std::to_string(digits) + ".digits");
}

fs::path ArtifactCache::cf_path(const BigInt& N, long digits) const {
  return dir_ / ("cf_" + file_safe(cf_constant_id(N)) + "_" + std::to_string(digits) + ".txt");
}

ArtifactCache::Digits ArtifactCache::digits(const std::string& constant, long digits, const LogOptions& options) {
  const auto path = digit_path(constant, digits);
  Digits out;
  if (fs::exists(path)) {
    out.record = read_digit_file(path);
    if (out.record.constant != constant || out.record.digits != digits)
      throw CacheIntegrityError("digit file header does not match its name: " + path.string());
    out.hash = sha256_file(path);
    out.from_cache = true;
    return out;
  }
  out.record = compute_digit_record(constant, digits, options);
  out.hash = write_digit_file(path, out.record);
  return out;
}

ArtifactCache::Terms ArtifactCache::log2_terms(const BigInt& N, long digits, const DigitRecord& log2, CfMethod method,
                                               bool parallel) {
  const auto path = cf_path(N, digits);
  Terms out;
  if (fs::exists(path)) {
    auto file = read_cf_file(path);
    if (file.constant != cf_constant_id(N)) throw CacheIntegrityError("CF file constant mismatch: " + path.string());
    out.terms = std::move(file.terms);
    out.hash = sha256_file(path);
    out.from_cache = true;
    return out;
  }
  out.terms = scan_terms_from_digits(log2, N, method, parallel);
  out.hash = write_cf_file(path, CfFile{cf_constant_id(N), out.terms});
  return out;
}

}  // namespace emcf
