#include <gtest/gtest.h>

#include "botdet/correlation.hpp"
#include "support.hpp"

namespace botdet {
namespace {

using namespace test;

class Correlation : public ::testing::Test {
 protected:
  DetectionConfig cfg = config();

  std::vector<Alert> prep(std::vector<Alert> alerts) { return annotated(std::move(alerts), cfg); }

  BotRecord record(std::vector<Alert> alerts, Mode mode, StatusId status) {
    std::vector<const Alert*> ptrs;
    for (const auto& a : alerts) ptrs.push_back(&a);
    return make_bot_record(ptrs, mode, status);
  }

  AttackRecord attack(const char* host, std::vector<double> seconds) {
    AttackRecord r;
    r.src_ip = ip(host);
    r.signature_name = "ICMP flood";
    for (double s : seconds) r.buckets.push_back(bucket_of(at(s), cfg.time_bucket));
    return r;
  }
};

TEST_F(Correlation, CoherentNonStandardFullStatus) {
  auto r1_1 = std::vector{record({tracked(1, 1, "10.0.0.12", 1100, "198.51.100.7", 7000)},
                                 Mode::Coherent, StatusId::CoherentNonStandard)};
  auto raw = prep({privmsg(5, 50.3, "10.0.0.12", 1100, "198.51.100.7", 7000)});
  auto out = correlate_coherent_nonstandard(r1_1, raw, std::vector{attack("10.0.0.12", {50.9})},
                                            cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].status, StatusId::CoherentNonStandardAttack);
  EXPECT_EQ(out[0].evidence, (std::vector<std::uint64_t>{1, 5}));
  EXPECT_EQ(out[0].last_seen, at(50.3));
  EXPECT_EQ(out[0].first_seen, at(1));
}

TEST_F(Correlation, CoherentNonStandardResponseOnly) {
  auto r1_1 = std::vector{record({tracked(1, 1, "10.0.0.12", 1100, "198.51.100.7", 7000)},
                                 Mode::Coherent, StatusId::CoherentNonStandard)};
  auto raw = prep({privmsg(5, 50.3, "10.0.0.12", 1100, "198.51.100.7", 7000)});
  auto out = correlate_coherent_nonstandard(r1_1, raw, std::vector{attack("10.0.0.12", {70})},
                                            cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].status, StatusId::CoherentNonStandardResponse);
}

TEST_F(Correlation, ResponseMustBeStrictlyLater) {
  auto r1_1 = std::vector{record({tracked(1, 1, "10.0.0.12", 1100, "198.51.100.7", 7000)},
                                 Mode::Coherent, StatusId::CoherentNonStandard)};
  auto raw = prep({privmsg(2, 1, "10.0.0.12", 1100, "198.51.100.7", 7000),
                   privmsg(3, 30, "10.0.0.12", 1101, "198.51.100.7", 7000)});
  auto out = correlate_coherent_nonstandard(r1_1, raw, {}, cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], r1_1[0]);
}

TEST_F(Correlation, AttackAloneDoesNotUpgrade) {
  auto r1_1 = std::vector{record({tracked(1, 1, "10.0.0.12", 1100, "198.51.100.7", 7000)},
                                 Mode::Coherent, StatusId::CoherentNonStandard)};
  auto out = correlate_coherent_nonstandard(r1_1, {}, std::vector{attack("10.0.0.12", {1})}, cfg);
  EXPECT_EQ(out[0].status, StatusId::CoherentNonStandard);
}

TEST_F(Correlation, EmptyInputsGiveEmptyOutputs) {
  EXPECT_TRUE(correlate_coherent_nonstandard({}, {}, {}, cfg).empty());
  EXPECT_TRUE(correlate_noncoherent({}, {}, {}, cfg).empty());
  EXPECT_TRUE(correlate_single_nonstandard({}, {}, {}, {}, cfg).empty());
  EXPECT_TRUE(correlate_single_standard({}, {}, {}, cfg).empty());
}

TEST_F(Correlation, CoherentStandardContinued) {
  auto r1_2 = std::vector{record({tracked(1, 1, "10.0.0.11", 1100, "203.0.113.2", 6667)},
                                 Mode::Coherent, StatusId::CoherentStandard)};
  auto r3_2 = prep({privmsg(4, 31, "10.0.0.11", 1100, "203.0.113.2", 6667)});
  auto out = correlate_coherent_standard(r1_2, r3_2, {}, cfg);
  EXPECT_EQ(out[0].status, StatusId::CoherentStandardResponse);
  out = correlate_coherent_standard(r1_2, {}, {}, cfg);
  EXPECT_EQ(out[0].status, StatusId::CoherentStandard);
}

TEST_F(Correlation, NonCoherentContinues) {
  auto r2 = std::vector{record({privmsg(1, 7, "10.0.0.21", 1300, "203.0.113.9", 6667)},
                               Mode::NonCoherent, StatusId::NonCoherent),
                        record({privmsg(2, 7, "10.0.0.22", 1301, "203.0.113.9", 6667)},
                               Mode::NonCoherent, StatusId::NonCoherent),
                        record({privmsg(3, 7, "10.0.0.23", 1302, "203.0.113.9", 6667)},
                               Mode::NonCoherent, StatusId::NonCoherent)};
  auto raw = prep({privmsg(1, 7, "10.0.0.21", 1300, "203.0.113.9", 6667),
                   privmsg(2, 7, "10.0.0.22", 1301, "203.0.113.9", 6667),
                   privmsg(3, 7, "10.0.0.23", 1302, "203.0.113.9", 6667),
                   privmsg(4, 57, "10.0.0.21", 1300, "203.0.113.9", 6667),
                   privmsg(5, 57, "10.0.0.22", 1301, "203.0.113.9", 6667)});
  auto out = correlate_noncoherent(r2, raw, {}, cfg);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].status, StatusId::NonCoherentResponse);
  EXPECT_EQ(out[1].status, StatusId::NonCoherentResponse);
  EXPECT_EQ(out[2].status, StatusId::NonCoherent);
  for (const auto& r : out) EXPECT_FALSE(status_message(r.status).has_attack);

  out = correlate_noncoherent(r2, raw, std::vector{attack("10.0.0.22", {57})}, cfg);
  EXPECT_EQ(out[1].status, StatusId::NonCoherentAttack);
}

TEST_F(Correlation, SingleNonStandard) {
  auto raw = prep({privmsg(1, 11, "10.0.0.13", 1200, "198.51.100.7", 7000),
                   privmsg(2, 61, "10.0.0.13", 1200, "198.51.100.7", 7000)});
  auto r3_1 = std::vector{record(raw, Mode::Single, StatusId::SingleNonStandard)};
  auto out = correlate_single_nonstandard(r3_1, raw, {}, {}, cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].status, StatusId::SingleNonStandard);

  out = correlate_single_nonstandard(r3_1, raw, std::vector{attack("10.0.0.13", {61})}, {}, cfg);
  EXPECT_EQ(out[0].status, StatusId::SingleNonStandardAttack);

  std::set<FlowPattern> already{r3_1[0].pattern};
  EXPECT_TRUE(correlate_single_nonstandard(r3_1, raw, {}, already, cfg).empty());
}

TEST_F(Correlation, SingleStandardNeedsCoBucketedAttack) {
  auto r3_2 = prep({privmsg(1, 600.2, "10.0.0.12", 1100, "203.0.113.2", 6667),
                    privmsg(2, 700.2, "10.0.0.12", 1100, "203.0.113.2", 6667),
                    privmsg(3, 600.4, "10.0.0.40", 2000, "203.0.113.2", 6667)});
  auto out = correlate_single_standard(r3_2, std::vector{attack("10.0.0.12", {600})}, {}, cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].pattern.src_ip, ip("10.0.0.12"));
  EXPECT_EQ(out[0].status, StatusId::SingleStandardAttack);
  EXPECT_EQ(out[0].evidence, (std::vector<std::uint64_t>{1, 2}));

  EXPECT_TRUE(correlate_single_standard(r3_2, {}, {}, cfg).empty());
  EXPECT_TRUE(correlate_single_standard(r3_2, std::vector{attack("10.0.0.12", {601})}, {}, cfg)
                  .empty());
  std::set<FlowPattern> already{out[0].pattern};
  EXPECT_TRUE(
      correlate_single_standard(r3_2, std::vector{attack("10.0.0.12", {600})}, already, cfg)
          .empty());
}

TEST_F(Correlation, HostsWithConcurrentAttack) {
  auto responses = prep({privmsg(1, 5.5, "10.0.0.12", 1100, "203.0.113.2", 6667),
                         privmsg(2, 9.5, "10.0.0.13", 1101, "203.0.113.2", 6667)});
  auto index = index_attacks(std::vector{attack("10.0.0.12", {5}), attack("10.0.0.13", {5})});
  EXPECT_EQ(hosts_with_concurrent_attack(responses, index, cfg), std::set<Ipv4>{ip("10.0.0.12")});
}

TEST_F(Correlation, AssemblyPrecedenceAndPartition) {
  auto a1 = tracked(1, 1, "10.0.0.12", 1100, "198.51.100.7", 7000);
  BranchResults b;
  b.coherent_nonstandard = {record({a1}, Mode::Coherent, StatusId::CoherentNonStandardResponse)};
  b.single_nonstandard = {record({a1}, Mode::Single, StatusId::SingleNonStandardAttack)};
  b.noncoherent = {
      record({privmsg(2, 7, "10.0.0.21", 1300, "203.0.113.9", 6667)}, Mode::NonCoherent,
             StatusId::NonCoherent),
      record({privmsg(2, 7, "10.0.0.21", 1300, "203.0.113.9", 6667)}, Mode::NonCoherent,
             StatusId::NonCoherentAttack)};
  auto raw = prep({privmsg(3, 9, "10.0.0.12", 1100, "198.51.100.7", 7000),
                   privmsg(4, 9, "10.0.0.21", 1300, "203.0.113.9", 6667),
                   privmsg(5, 9, "10.0.0.30", 2000, "203.0.113.9", 6667)});
  std::vector<AttackRecord> r4{attack("10.0.0.21", {9})};
  auto r5 = assemble_report5(b, r4, raw, 100, 2);
  ASSERT_EQ(r5.bots.size(), 2u);
  EXPECT_EQ(r5.bots[0].status, StatusId::CoherentNonStandardResponse);
  EXPECT_EQ(r5.bots[1].status, StatusId::NonCoherentAttack);
  EXPECT_EQ(r5.attacks, r4);
  ASSERT_EQ(r5.malicious_irc.size(), 2u);
  ASSERT_EQ(r5.normal_irc.size(), 1u);
  EXPECT_EQ(r5.normal_irc[0].id, 5u);
  EXPECT_EQ(r5.stats.total_alerts, 100u);
  EXPECT_EQ(r5.stats.total_irc, 3u);
  EXPECT_EQ(r5.stats.bots_detected, 2u);
  EXPECT_EQ(r5.stats.bots_present, 2u);
}

TEST_F(Correlation, ZeroBotsAllNormal) {
  auto raw = prep({privmsg(1, 9, "10.0.0.30", 2000, "203.0.113.9", 6667),
                   privmsg(2, 19, "10.0.0.30", 2000, "203.0.113.9", 6667)});
  auto r5 = assemble_report5({}, {}, raw, 2);
  EXPECT_TRUE(r5.bots.empty());
  EXPECT_TRUE(r5.malicious_irc.empty());
  EXPECT_EQ(r5.normal_irc, raw);
  EXPECT_EQ(r5.stats.pct_normal.to_string(), "100%");
  EXPECT_EQ(r5.stats.pct_malicious.to_string(), "0%");
}

}  // namespace
}  // namespace botdet
