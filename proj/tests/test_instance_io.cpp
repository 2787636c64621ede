#include "support.hpp"

#include <gtest/gtest.h>

using namespace trp;
using trp::support::q;

TEST(InstanceIo, ParsesHalfLineInstance) {
  Instance inst = parse_instance("LINE 0 10\nREQ 4 4 0\n");
  EXPECT_TRUE(inst.line().is_half_line());
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst.requests()[0].actual_loc, q(4));
}

TEST(InstanceIo, ErrorOfARequest) {
  Instance inst = parse_instance("LINE -5 5\nREQ 2 2.5 3");
  EXPECT_EQ(inst.requests()[0].error(), q(1, 2));
}

TEST(InstanceIo, CommentsAndBlankLines) {
  Instance inst = parse_instance("# header\n\nLINE -1 1\n  # indented\nREQ 1/2 -1/2 7/3\r\n");
  EXPECT_EQ(inst.requests()[0].arrival_time, q(7, 3));
}

TEST(InstanceIo, ReportsLineNumbers) {
  struct Case {
    const char* text;
    std::size_t line;
    const char* fragment;
  };
  for (const Case& c : {Case{"LINE 0 10\nREQ 11 11 0", 2, "outside segment"},
                        Case{"LINE 0 10\nREQ 1 1 -1", 2, "negative time"},
                        Case{"LINE 0 10\n\nREQ 1 x 0", 3, "malformed"},
                        Case{"REQ 1 1 0", 1, "before LINE"},
                        Case{"LINE 0 10\nREQ 1 1", 2, "expected REQ"},
                        Case{"LINE 0 10\nFOO", 2, "unknown record"},
                        Case{"LINE 3 10\n", 1, "origin"},
                        Case{"LINE 0 10\n", 1, "no requests"}}) {
    try {
      parse_instance(c.text);
      ADD_FAILURE() << "no error for: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
      EXPECT_NE(std::string(e.what()).find(c.fragment), std::string::npos) << e.what();
    }
  }
}

TEST(InstanceIo, SerializesCanonically) {
  Instance inst = parse_instance("LINE -10 10.0\nREQ 0.5 2/4 3\n");
  EXPECT_EQ(serialize_instance(inst), "LINE -10 10\nREQ 1/2 1/2 3\n");
}

TEST(InstanceIo, RoundTripOverRandomInstances) {
  Rng rng(2024);
  GenerateParams p;
  p.delta = q(3, 2);
  p.grid = 7;
  for (int i = 0; i < 300; ++i) {
    Instance inst = generate_perturbed(p, rng);
    std::string text = serialize_instance(inst);
    Instance back = parse_instance(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(serialize_instance(back), text);
  }
}

TEST(InstanceIo, ModelIsCarried) {
  Instance inst = parse_instance("LINE 0 1\nREQ 1 1 0", Model::Original);
  EXPECT_EQ(inst.model(), Model::Original);
  EXPECT_EQ(to_string(inst.model()), "original");
}
