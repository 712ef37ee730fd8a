#include <gtest/gtest.h>

#include <set>
#include <string>

#include "botdet/status.hpp"

namespace botdet {
namespace {

TEST(Status, FixedTexts) {
  EXPECT_EQ(status_message(StatusId::CoherentNonStandard).text,
            "Coherent mode: IRC bot has illegitimate IRC connection on non-standard IRC port");
  EXPECT_EQ(status_message(StatusId::CoherentStandard).text,
            "Coherent mode: IRC bot has illegitimate IRC connection on standard IRC port");
  EXPECT_EQ(status_message(StatusId::SingleNonStandard).text,
            "IRC bot has illegitimate IRC connection on non-standard IRC port");
  EXPECT_EQ(status_message(StatusId::NonCoherent).text,
            "Non-coherent mode: IRC bot has illegitimate IRC connection");
}

TEST(Status, TwelveDistinctTexts) {
  auto all = all_status_messages();
  ASSERT_EQ(all.size(), 12u);
  std::set<std::string_view> texts;
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(static_cast<int>(all[i].id), static_cast<int>(i) + 1);
    texts.insert(all[i].text);
  }
  EXPECT_EQ(texts.size(), 12u);
}

TEST(Status, FlagsMatchTexts) {
  for (const auto& m : all_status_messages()) {
    const std::string text(m.text);
    EXPECT_EQ(m.has_attack, text.find("botnet attack") != std::string::npos) << text;
    EXPECT_EQ(m.has_cc_response, text.find("C&C response") != std::string::npos) << text;
    EXPECT_EQ(m.mode == Mode::Coherent, text.starts_with("Coherent mode")) << text;
    EXPECT_EQ(m.mode == Mode::NonCoherent, text.starts_with("Non-coherent mode")) << text;
    if (m.port_class == PortClass::NonStandard)
      EXPECT_NE(text.find("non-standard IRC port"), std::string::npos) << text;
  }
}

TEST(Status, RichnessOrdersAttackAboveResponse) {
  EXPECT_GT(status_richness(StatusId::CoherentNonStandardAttack),
            status_richness(StatusId::CoherentNonStandardResponse));
  EXPECT_GT(status_richness(StatusId::CoherentNonStandardResponse),
            status_richness(StatusId::CoherentNonStandard));
  EXPECT_GT(status_richness(StatusId::SingleStandardAttack),
            status_richness(StatusId::NonCoherentResponse));
  EXPECT_EQ(status_richness(StatusId::NonCoherent), status_richness(StatusId::SingleNonStandard));
}

TEST(Status, UnknownIdThrows) {
  EXPECT_THROW(status_message(static_cast<StatusId>(13)), std::out_of_range);
  EXPECT_THROW(status_message(static_cast<StatusId>(0)), std::out_of_range);
}

}  // namespace
}  // namespace botdet
