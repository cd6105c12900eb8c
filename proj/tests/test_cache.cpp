#include <gtest/gtest.h>

#include <unistd.h>

#include <fstream>

#include "printers.hpp"
#include "mmf/basis_cache.hpp"
#include "mmf/errors.hpp"
#include "mmf/suites.hpp"

using namespace mmf;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mmf_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

BasisBuilder& builder() {
  static BasisBuilder b(std::make_shared<const GtildeFamily>(8, family_order_for_index(64)));
  return b;
}

void expect_same(const BasisEntry& a, const BasisEntry& b) {
  EXPECT_EQ(a.kind, b.kind);
  EXPECT_EQ(a.index, b.index);
  EXPECT_EQ(a.form.rep, b.form.rep);
  for (int l = 0; l < 3; ++l) EXPECT_EQ(a.form.comp[l], b.form.comp[l]);
  EXPECT_EQ(a.provenance.to_json(), b.provenance.to_json());
}

}  // namespace

TEST(Cache, JsonRoundTrip) {
  for (const BasisEntry* e : {&builder().G(7), &builder().F(9)}) {
    nlohmann::json j = basis_entry_to_json(*e);
    EXPECT_EQ(j["format_version"], kCacheFormatVersion);
    EXPECT_EQ(j["order"], e->form.index_bound());
    expect_same(basis_entry_from_json(j), *e);
  }
}

TEST(Cache, StoreAndLoad) {
  fs::path dir = fresh_dir("store");
  BasisCache cache(dir);
  const BasisEntry& g = builder().G(15);
  cache.store(g);
  EXPECT_TRUE(fs::exists(cache.path_for('G', 15)));
  auto back = cache.load('G', 15, 32);
  ASSERT_TRUE(back.has_value());
  expect_same(*back, g);
  EXPECT_FALSE(cache.load('G', 15, 1000).has_value());
  EXPECT_FALSE(cache.load('F', 15, 1).has_value());
  fs::remove_all(dir);
}

TEST(Cache, VersionMismatchIsIgnored) {
  fs::path dir = fresh_dir("version");
  BasisCache cache(dir);
  nlohmann::json j = basis_entry_to_json(builder().G(3));
  j["format_version"] = kCacheFormatVersion + 1;
  std::ofstream(cache.path_for('G', 3)) << j.dump();
  EXPECT_FALSE(cache.load('G', 3, 1).has_value());
  EXPECT_THROW(basis_entry_from_json(j), DomainError);
  // The stale file is replaced on the next store.
  cache.store(builder().G(3));
  EXPECT_TRUE(cache.load('G', 3, 1).has_value());
  fs::remove_all(dir);
}

TEST(Cache, KeepsTheMorePreciseEntry) {
  fs::path dir = fresh_dir("precise");
  BasisCache cache(dir);
  cache.store(builder().G(1));
  BasisEntry coarse = builder().G(1);
  coarse.form = coarse.form.truncated(BigRational(2));
  cache.store(coarse);
  auto back = cache.load('G', 1, 1);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(back->form.index_bound(), builder().G(1).form.index_bound());
  fs::remove_all(dir);
}

TEST(Workspace, CacheServesLaterRuns) {
  fs::path dir = fresh_dir("workspace");
  BasisEntry first;
  {
    Workspace ws(dir);
    first = ws.G(11, 40);
  }
  EXPECT_TRUE(fs::exists(dir / "G_11.json"));
  Workspace ws(dir);
  expect_same(ws.G(11, 40), first);
  fs::remove_all(dir);
}

TEST(Workspace, MoreTermsExtendNeverChange) {
  Workspace ws;
  const VVForm& small = ws.G(7, 16).form;
  BasisEntry kept = ws.G(7, 16);
  const VVForm& big = ws.G(7, 200).form;
  EXPECT_GE(big.index_bound(), 200);
  for (long n = -7; n < 16; ++n) EXPECT_EQ(big.coeff(n), kept.form.coeff(n)) << n;
  (void)small;
}

TEST(Workspace, RejectsInvalidIndex) {
  Workspace ws;
  EXPECT_THROW(ws.G(5, 16), DomainError);
  EXPECT_THROW(ws.F(11, 16), DomainError);
}
