#include <gtest/gtest.h>

#include "botdet/phase2.hpp"
#include "support.hpp"

namespace botdet {
namespace {

using namespace test;

class Phase2 : public ::testing::Test {
 protected:
  DetectionConfig cfg = config();
  std::vector<Alert> prep(std::vector<Alert> alerts) { return annotated(std::move(alerts), cfg); }
};

TEST_F(Phase2, PartCStrictlyAfterTimeLog) {
  auto alerts = prep({privmsg(1, 10, "10.0.0.2", 1000, "203.0.113.5", 7000),
                      privmsg(2, 15, "10.0.0.2", 1000, "203.0.113.5", 7000),
                      privmsg(3, 16, "10.0.0.3", 1001, "203.0.113.5", 6667)});
  auto c = filter_part_c(alerts, at(10), cfg);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].id, 2u);
  EXPECT_TRUE(filter_part_c(alerts, std::nullopt, cfg).empty());
}

TEST_F(Phase2, PartCClusterSingleBot) {
  auto alerts = prep({privmsg(1, 11, "10.0.0.13", 1200, "198.51.100.7", 7000),
                      privmsg(2, 61, "10.0.0.13", 1200, "198.51.100.7", 7000)});
  auto r = cluster_part_c(filter_part_c(alerts, at(0), cfg));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].status, StatusId::SingleNonStandard);
  EXPECT_EQ(r[0].mode, Mode::Single);
  EXPECT_EQ(r[0].evidence, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_TRUE(cluster_part_c(std::vector<Alert>{}).empty());
}

TEST_F(Phase2, PartDKeepsSlowChat) {
  std::vector<Alert> alerts;
  for (int i = 0; i < 20; ++i)
    alerts.push_back(privmsg(static_cast<std::uint64_t>(i + 1), 1 + 5.0 * i, "10.0.0.30", 2000,
                             "203.0.113.10", 6667));
  alerts = prep(alerts);
  EXPECT_EQ(filter_part_d(alerts, at(0), cfg).size(), 20u);
}

TEST_F(Phase2, PartDDropsFloodFlow) {
  std::vector<Alert> alerts;
  std::uint64_t id = 1;
  for (int i = 0; i < 50; ++i)
    alerts.push_back(privmsg(id++, 5 + i / 50.0, "10.0.0.31", 2001, "203.0.113.10", 6667));
  alerts.push_back(privmsg(id++, 9, "10.0.0.30", 2000, "203.0.113.10", 6667));
  alerts.push_back(privmsg(id++, 20, "10.0.0.31", 2001, "203.0.113.10", 6667));
  alerts = prep(alerts);
  auto d = filter_part_d(alerts, at(0), cfg);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].src_ip, ip("10.0.0.30"));
}

TEST_F(Phase2, PartDCeilingIsInclusive) {
  auto alerts = prep({privmsg(1, 5.1, "10.0.0.31", 2001, "203.0.113.10", 6667),
                      privmsg(2, 5.2, "10.0.0.31", 2001, "203.0.113.10", 6667)});
  EXPECT_EQ(filter_part_d(alerts, at(0), cfg).size(), 2u);
  cfg.pps_max_cc = 1.5;
  EXPECT_TRUE(filter_part_d(alerts, at(0), cfg).empty());
  cfg.pps_max_cc = std::numeric_limits<double>::infinity();
  EXPECT_EQ(filter_part_d(alerts, at(0), cfg).size(), 2u);
}

TEST_F(Phase2, ThreeBotsFloodOneVictim) {
  auto alerts = prep({icmp_flood(1, 100.1, "10.0.0.11", "198.18.0.9"),
                      icmp_flood(2, 100.2, "10.0.0.12", "198.18.0.9"),
                      icmp_flood(3, 100.3, "10.0.0.13", "198.18.0.9"),
                      icmp_flood(4, 101.3, "10.0.0.13", "198.18.0.9")});
  auto r4 = detect_botnet_attacks(alerts, at(0), cfg);
  ASSERT_EQ(r4.size(), 3u);
  for (const auto& rec : r4) EXPECT_EQ(rec.signature_name, "ICMP flood");
  EXPECT_EQ(r4[0].src_ip, ip("10.0.0.11"));
  EXPECT_EQ(r4[2].buckets.size(), 1u);
  EXPECT_EQ(r4[2].evidence, (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(r4[2].victims.size(), 1u);
}

TEST_F(Phase2, LoneAlertIsNoAttack) {
  auto alerts = prep({icmp_flood(1, 100.1, "10.0.0.11", "198.18.0.9")});
  EXPECT_TRUE(detect_botnet_attacks(alerts, at(0), cfg).empty());
}

TEST_F(Phase2, OneHostRepeatingCounts) {
  auto alerts = prep({icmp_flood(1, 100.1, "10.0.0.11", "198.18.0.9"),
                      icmp_flood(2, 100.5, "10.0.0.11", "198.18.0.9")});
  auto r4 = detect_botnet_attacks(alerts, at(0), cfg);
  ASSERT_EQ(r4.size(), 1u);
  EXPECT_EQ(r4[0].evidence, (std::vector<std::uint64_t>{1, 2}));
}

TEST_F(Phase2, AttackRespectsTimeLogAndFilters) {
  auto alerts = prep({icmp_flood(1, 5.1, "10.0.0.11", "198.18.0.9"),
                      icmp_flood(2, 5.2, "10.0.0.12", "198.18.0.9"),
                      AlertBuilder(3, 8.1).sig("1:384", "ICMP PING").from("10.0.0.11").to("8.8.8.8"),
                      AlertBuilder(4, 8.2).sig("1:384", "ICMP PING").from("10.0.0.12").to("8.8.8.8"),
                      icmp_flood(5, 9.1, "198.51.100.1", "198.18.0.9"),
                      icmp_flood(6, 9.2, "198.51.100.2", "198.18.0.9")});
  EXPECT_EQ(detect_botnet_attacks(alerts, at(5.15), cfg).size(), 2u);
  EXPECT_EQ(detect_botnet_attacks(alerts, std::nullopt, cfg).size(), 4u);
  cfg.attack_filter_list = {"ICMP PING"};
  auto r4 = detect_botnet_attacks(alerts, std::nullopt, cfg);
  ASSERT_EQ(r4.size(), 2u);
  EXPECT_EQ(r4[0].signature_name, "ICMP flood");
  EXPECT_TRUE(detect_botnet_attacks(alerts, at(8.5), cfg).empty());
}

TEST_F(Phase2, IrcTrafficIsNeverAnAttack) {
  auto alerts = prep({privmsg(1, 5.1, "10.0.0.11", 1000, "203.0.113.1", 6667),
                      privmsg(2, 5.2, "10.0.0.12", 1001, "203.0.113.1", 6667),
                      privmsg(3, 5.3, "10.0.0.12", 1001, "203.0.113.1", 6667)});
  EXPECT_TRUE(detect_botnet_attacks(alerts, std::nullopt, cfg).empty());
}

TEST_F(Phase2, MinimumThreshold) {
  auto alerts = prep({icmp_flood(1, 5.1, "10.0.0.11", "198.18.0.9"),
                      icmp_flood(2, 5.2, "10.0.0.12", "198.18.0.9")});
  cfg.min_concurrent_attackers = 3;
  EXPECT_TRUE(detect_botnet_attacks(alerts, std::nullopt, cfg).empty());
  cfg.min_concurrent_attackers = 1;
  auto single = prep({icmp_flood(1, 5.1, "10.0.0.11", "198.18.0.9")});
  EXPECT_EQ(detect_botnet_attacks(single, std::nullopt, cfg).size(), 1u);
}

TEST_F(Phase2, RunWithoutTimeLogStillDetectsAttacks) {
  auto alerts = prep({icmp_flood(1, 5.1, "10.0.0.11", "198.18.0.9"),
                      icmp_flood(2, 5.2, "10.0.0.12", "198.18.0.9")});
  auto p2 = run_phase2(alerts, std::nullopt, cfg);
  EXPECT_TRUE(p2.report_3_1.empty());
  EXPECT_TRUE(p2.raw_3_1.empty());
  EXPECT_TRUE(p2.report_3_2_alerts.empty());
  EXPECT_EQ(p2.report_4.size(), 2u);
}

}  // namespace
}  // namespace botdet
