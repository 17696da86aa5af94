#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "emcf/cache.hpp"
#include "emcf/report.hpp"

using namespace emcf;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("emcf_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void flip_byte(const fs::path& path, std::streamoff from_end) {
  std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
  f.seekg(-from_end, std::ios::end);
  const char ch = static_cast<char>(f.get());
  f.seekp(-from_end, std::ios::end);
  f.put(ch == '3' ? '4' : '3');
}

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("digit file roundtrip and corruption") {
    const auto dir = fresh_dir("digits");
    const auto rec = compute_digit_record("log2", 300);
    const auto path = dir / "log2.digits";
    const auto hash = write_digit_file(path, rec);
    CHECK(hash == sha256_file(path));
    const auto back = read_digit_file(path);
    CHECK(back.constant == rec.constant);
    CHECK(back.digits == rec.digits);
    CHECK(back.expansion == rec.expansion);

    flip_byte(path, 10);
    CHECK_THROWS_AS(read_digit_file(path), CacheIntegrityError);
    try {
      read_digit_file(path);
    } catch (const CacheIntegrityError& e) {
      CHECK(std::string(e.what()).find("digit-file hash mismatch") != std::string::npos);
    }
    write_digit_file(path, rec);
    fs::remove(path.string() + ".sha256");
    CHECK_THROWS_AS(read_digit_file(path), CacheIntegrityError);
    fs::remove_all(dir);
  }

  TEST_CASE("cf file roundtrip with a wide term") {
    const auto dir = fresh_dir("cf");
    PartialQuotients t;
    t.push_back(std::uint64_t{0});
    t.push_back(std::uint64_t{1});
    t.push_back(pow2(90) + 7);
    t.push_back(std::uint64_t{18446744073709551557ULL});
    t.set_certified_count(4);
    const auto path = dir / "x.cf";
    write_cf_file(path, CfFile{"log2/2", t});
    const auto back = read_cf_file(path);
    CHECK(back.constant == "log2/2");
    CHECK(back.terms == t);
    CHECK(back.terms.certified_count() == 4);
    flip_byte(path, 3);
    CHECK_THROWS_AS(read_cf_file(path), CacheIntegrityError);
    fs::remove_all(dir);
  }

  TEST_CASE("artifact cache reuses files and stays coherent") {
    const auto dir = fresh_dir("artifacts");
    ArtifactCache cache(dir);
    const auto first = cache.digits("log2", 500);
    CHECK(!first.from_cache);
    const auto second = cache.digits("log2", 500);
    CHECK(second.from_cache);
    CHECK(second.hash == first.hash);
    CHECK(second.record.expansion == first.record.expansion);
    // A different digit count is a different artifact.
    CHECK(!cache.digits("log2", 400).from_cache);

    const auto terms = cache.log2_terms(4, 500, first.record, CfMethod::hgcd);
    CHECK(!terms.from_cache);
    const auto again = cache.log2_terms(4, 500, first.record, CfMethod::quadratic);
    CHECK(again.from_cache);
    CHECK(again.terms == terms.terms);
    CHECK(again.hash == terms.hash);
    CHECK(cf_constant_id(4) == "log2/8");
    CHECK(again.terms == scan_terms_from_digits(first.record, 4, CfMethod::quadratic, false));

    flip_byte(cache.digit_path("log2", 500), 20);
    CHECK_THROWS_AS(cache.digits("log2", 500), CacheIntegrityError);
    fs::remove_all(dir);
  }

  TEST_CASE("reports are deterministic apart from wall time") {
    ScanConfig cfg;
    cfg.digit_budget = 1200;
    cfg.prime_bound = 1000;
    const auto r1 = run_scan(cfg), r2 = run_scan(cfg);
    RunManifest m1{"scan", to_json(cfg), "aa", "bb", 1.23456, "accepted"};
    RunManifest m2 = m1;
    m2.wall_seconds = 9.0;
    const auto j1 = make_report(m1, to_json(r1));
    const auto j2 = make_report(m2, to_json(r2));
    CHECK(deterministic_dump(j1) == deterministic_dump(j2));
    CHECK(j1.dump() != j2.dump());
    CHECK(j1["manifest"]["wall_seconds"] == "1.235");
    CHECK(j1["result"]["status"] == "accepted");
    CHECK(j1["result"]["accepted"]["j"] == "872");
    CHECK(j1["result"]["candidates"][0]["violating_prime"] == "149");
    CHECK(j1["result"]["m_bound"]["exponent"].is_string());
    CHECK(to_json(cfg)["threshold"] == "178");

    const auto root = solve_k(3, 20);
    CHECK(to_json(root, 10)["exact_integer"] == true);
    CHECK(to_json(min_omega_from_bound(Real(14L)))["omega"] == "7");
  }
}
