// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <string>

#include "gformal/gformal.h"

namespace {

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(gformal_version(), "0.1.0");
  EXPECT_STREQ(gformal_status_name(GFORMAL_OK), "OK");
  EXPECT_STREQ(gformal_status_name(GFORMAL_PATTERN_INAPPLICABLE), "PATTERN_INAPPLICABLE");
  EXPECT_STREQ(gformal_status_name(static_cast<gformal_status>(77)), "UNKNOWN_STATUS");
}

TEST(CApi, RunProducesBothRenderings) {
  gformal_report* r = nullptr;
  ASSERT_EQ(gformal_run("command: homog\ntarget: su2/t1\nformat: structured", nullptr, &r), GFORMAL_OK);
  EXPECT_EQ(gformal_report_format(r), GFORMAL_FORMAT_STRUCTURED);
  EXPECT_STREQ(gformal_report_output(r), "");
  std::string json = gformal_report_text(r, GFORMAL_FORMAT_STRUCTURED);
  EXPECT_NE(json.find("\"schema\": \"gformal.report/1\""), std::string::npos);
  std::string human = gformal_report_text(r, GFORMAL_FORMAT_HUMAN);
  EXPECT_NE(human.find("betti        1 0 1"), std::string::npos);
  gformal_report_free(r);
}

TEST(CApi, ErrorsComeBackAsStatus) {
  gformal_report* r = reinterpret_cast<gformal_report*>(0x1);
  EXPECT_EQ(gformal_run("command: nope", nullptr, &r), GFORMAL_MALFORMED_CONFIG);
  EXPECT_EQ(r, nullptr);
  EXPECT_NE(std::string(gformal_last_error()).find("unknown command"), std::string::npos);
  EXPECT_EQ(gformal_run(nullptr, nullptr, &r), GFORMAL_INVALID_ARGUMENT);
  EXPECT_EQ(gformal_run("command: certify\ntarget: wedge", "{}", &r), GFORMAL_PATTERN_INAPPLICABLE);
  gformal_ring* ring = nullptr;
  EXPECT_EQ(gformal_ring_named("klein-bottle", nullptr, nullptr, nullptr, 5, 7, &ring), GFORMAL_UNKNOWN_TARGET);
  EXPECT_EQ(gformal_ring_named("totaro", "1/0", nullptr, nullptr, 5, 7, &ring), GFORMAL_INVALID_ARGUMENT);
  EXPECT_EQ(gformal_ring_pattern(nullptr), nullptr);
  gformal_report_free(nullptr);
  gformal_ring_free(nullptr);
  gformal_certificate_free(nullptr);
}

TEST(CApi, RingCertificateRoundTrip) {
  gformal_ring* ring = nullptr;
  ASSERT_EQ(gformal_ring_named("sphere-bundle", nullptr, nullptr, "2", 5, 7, &ring), GFORMAL_OK);
  size_t count = 0;
  int betti[8] = {};
  ASSERT_EQ(gformal_ring_betti(ring, betti, 8, &count), GFORMAL_OK);
  ASSERT_EQ(count, 7u);
  EXPECT_EQ(betti[2], 2);
  EXPECT_EQ(betti[4], 2);
  EXPECT_STREQ(gformal_ring_pattern(ring), "RANK_KERNEL");

  gformal_ring* copy = nullptr;
  ASSERT_EQ(gformal_ring_parse(gformal_ring_text(ring), &copy), GFORMAL_OK);
  EXPECT_STREQ(gformal_ring_text(copy), gformal_ring_text(ring));

  gformal_certificate* cert = nullptr;
  ASSERT_EQ(gformal_certify(copy, &cert), GFORMAL_OK);
  EXPECT_STREQ(gformal_certificate_verdict(cert), "INFEASIBLE");
  ASSERT_GT(gformal_certificate_step_count(cert), 2u);
  EXPECT_EQ(gformal_certificate_step_id(cert, 1000), nullptr);
  int accepted = 0;
  ASSERT_EQ(gformal_certificate_verify(cert, 50, 3, &accepted), GFORMAL_OK);
  EXPECT_EQ(accepted, 1);

  for (size_t i = 0; i < gformal_certificate_step_count(cert); ++i) {
    gformal_certificate* bad = nullptr;
    ASSERT_EQ(gformal_certificate_corrupt(cert, i, &bad), GFORMAL_OK);
    ASSERT_EQ(gformal_certificate_verify(bad, 50, 3, &accepted), GFORMAL_OK);
    EXPECT_EQ(accepted, 0) << gformal_certificate_step_id(cert, i);
    gformal_certificate_free(bad);
  }
  gformal_certificate_free(cert);
  gformal_ring_free(copy);
  gformal_ring_free(ring);
}

TEST(CApi, Realize) {
  gformal_ring* ring = nullptr;
  ASSERT_EQ(gformal_ring_named("wedge", nullptr, nullptr, nullptr, 2, 4, &ring), GFORMAL_OK);
  int feasible = 0;
  double residual = 1;
  ASSERT_EQ(gformal_realize(ring, 16, 1, &feasible, &residual), GFORMAL_OK);
  EXPECT_EQ(feasible, 1);
  EXPECT_LT(residual, 1e-8);
  EXPECT_EQ(gformal_realize(ring, 0, 1, &feasible, &residual), GFORMAL_INVALID_ARGUMENT);
  gformal_ring_free(ring);
}

}  // namespace
