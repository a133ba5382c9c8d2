#include <gtest/gtest.h>

#include "idk/morphology.hpp"

using namespace idk::morphology;

TEST(Morphology, ThirdSingular) {
  EXPECT_EQ(third_singular("live"), "lives");
  EXPECT_EQ(third_singular("watch"), "watches");
  EXPECT_EQ(third_singular("go"), "goes");
  EXPECT_EQ(third_singular("study"), "studies");
  EXPECT_EQ(third_singular("play"), "plays");
  EXPECT_EQ(third_singular("fix"), "fixes");
  EXPECT_EQ(third_singular("have"), "has");
  EXPECT_EQ(third_singular("be"), "is");
  EXPECT_EQ(third_singular("Work"), "works");
}

TEST(Morphology, PastIrregular) {
  EXPECT_EQ(past("eat"), "ate");
  EXPECT_EQ(past("go"), "went");
  EXPECT_EQ(past("write"), "wrote");
  EXPECT_EQ(past("buy"), "bought");
  EXPECT_EQ(past("put"), "put");
  EXPECT_GE(irregular_past().size(), 200u);
}

TEST(Morphology, PastRegular) {
  EXPECT_EQ(past("live"), "lived");
  EXPECT_EQ(past("work"), "worked");
  EXPECT_EQ(past("study"), "studied");
  EXPECT_EQ(past("play"), "played");
  EXPECT_EQ(past("stop"), "stopped");
  EXPECT_EQ(past("crash"), "crashed");
  EXPECT_EQ(past("visit"), "visited");
  EXPECT_EQ(past("fix"), "fixed");
}

TEST(Morphology, Inflect) {
  EXPECT_EQ(inflect("Live", Inflection::kBase), "live");
  EXPECT_EQ(inflect("live", Inflection::kThirdSingular), "lives");
  EXPECT_EQ(inflect("live", Inflection::kPast), "lived");
}
