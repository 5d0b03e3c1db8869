#include "capbound/isd_json.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace capbound;
using nlohmann::json;

namespace {

const std::string kData = CAPBOUND_DATA_DIR;

json noiseless() { return read_json_file(kData + "/noiseless_binary.json"); }

std::string domain_message(const json &j) {
  try {
    channel_spec_from_json(j);
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
    return e.what();
  }
  ADD_FAILURE() << "expected a domain error";
  return {};
}

} // namespace

TEST(ChannelJson, LoadsSampleFiles) {
  auto s = load_channel_spec(kData + "/noiseless_binary.json");
  EXPECT_EQ(s.alphabets.y1, 2u);
  EXPECT_EQ(s.feedback_mode, FeedbackMode::generalized);
  auto bs = eval_bounds(s, InputDist::uniform(2, 2));
  EXPECT_NEAR(bs.value(BoundId::two_r1_plus_r2), 2.0, 1e-12);

  auto fb = load_channel_spec(kData + "/output_feedback_bsc.json");
  EXPECT_EQ(fb.feedback_mode, FeedbackMode::output_feedback);
  EXPECT_DOUBLE_EQ(fb.frontend1_prob(0, 0, 0), 0.9);
  EXPECT_TRUE(frontend1_correlated(fb));
}

TEST(ChannelJson, RatioStrings) {
  auto j = noiseless();
  j["frontend2"] = json::array({json::array({"1/3", "2/3"}), json::array({"0.5", "1/2"})});
  auto s = channel_spec_from_json(j);
  EXPECT_NEAR(s.frontend2[0][0], 1.0 / 3, 1e-16);
}

TEST(ChannelJson, ErrorsNameTheField) {
  auto j = noiseless();
  j["frontend2"][1] = json::array({"0.9", "0"});
  EXPECT_NE(domain_message(j).find("frontend2"), std::string::npos);

  j = noiseless();
  j["frontend2"][0][0] = 1.0;
  EXPECT_NE(domain_message(j).find("frontend2[0][0]"), std::string::npos);

  j = noiseless();
  j["alphabets"].erase("t2");
  EXPECT_NE(domain_message(j).find("t2"), std::string::npos);

  j = noiseless();
  j["f1"] = {{0, 0}, {1, 1}};
  EXPECT_NE(domain_message(j).find("f1"), std::string::npos);

  j = noiseless();
  j["feedback_mode"] = "sometimes";
  EXPECT_NE(domain_message(j).find("feedback_mode"), std::string::npos);

  j = noiseless();
  j["frontend2"][0][0] = "1/0";
  EXPECT_NE(domain_message(j).find("zero denominator"), std::string::npos);
}

TEST(ChannelJson, RoundTrip) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 20; ++i) {
    auto s = oracle::random_isd_spec(rng, 3, i % 2 == 0);
    auto back = channel_spec_from_json(json::parse(channel_spec_to_json(s).dump()));
    EXPECT_EQ(back.frontend1, s.frontend1);
    EXPECT_EQ(back.frontend2, s.frontend2);
    EXPECT_EQ(back.f1, s.f1);
    EXPECT_EQ(back.f3, s.f3);
    EXPECT_EQ(back.feedback_mode, s.feedback_mode);
  }
}

TEST(InputJson, ParsesMassMatrix) {
  auto p = input_dist_from_json(read_json_file(kData + "/skewed_input.json"));
  EXPECT_DOUBLE_EQ(p.mass(0, 1), 0.25);
  EXPECT_THROW(input_dist_from_json(json::parse(R"({"mass": [["0.5", "0.4"]]})")), Error);
}

TEST(ReadJson, MissingFileIsIoError) {
  try {
    read_json_file(kData + "/does_not_exist.json");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}
