#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <seedgrow/seedgrow.hpp>

#include "cli.hpp"
#include "fixtures.hpp"

namespace seedgrow {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("seedgrow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "seedgrow");
        out_.str("");
        err_.str("");
        return cli::run(args, out_, err_);
    }

    void save(const std::string& name, const GrayImage& img) { write_file(path(name), write_pgm(img)); }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

GrayImage blob_9x9() {
    GrayImage img(9, 9, std::uint8_t{30});
    for (int y = 2; y <= 6; ++y) {
        for (int x = 2; x <= 6; ++x) img(x, y) = 220;
    }
    return img;
}

TEST_F(CliTest, OtsuOnBimodalImage) {
    save("bimodal.pgm", fixtures::bimodal_10_200());
    ASSERT_EQ(run({"otsu", path("bimodal.pgm")}), 0) << err_.str();
    EXPECT_EQ(out_.str().substr(0, 13), "threshold=10\n");
}

TEST_F(CliTest, SeedsOnSingleBlob) {
    save("blob.pgm", blob_9x9());
    ASSERT_EQ(run({"seeds", path("blob.pgm"), "--k", "1", "--median", "1", "--out", path("s.csv")}), 0) << err_.str();
    const Bytes csv = read_file(path("s.csv"));
    // 5x5 blob, R = 3: the nine inner pixels are candidates and the lone
    // centroid is their mean, the blob center.
    EXPECT_EQ(std::string(csv.begin(), csv.end()), "id,x,y,intensity\n1,4,4,220\n");
}

TEST_F(CliTest, SeedsToStandardOutput) {
    save("blob.pgm", blob_9x9());
    ASSERT_EQ(run({"seeds", path("blob.pgm"), "--k", "1"}), 0) << err_.str();
    EXPECT_EQ(out_.str(), "id,x,y,intensity\n1,4,4,220\n");
}

TEST_F(CliTest, SegmentWritesOutputs) {
    save("blob.pgm", blob_9x9());
    ASSERT_EQ(run({"segment", path("blob.pgm"), "--k", "1", "--median", "1", "--out", path("l.pgm"), "--seeds-out",
                   path("s.csv"), "--ppm-out", path("v.ppm")}),
              0)
        << err_.str();
    EXPECT_NE(out_.str().find("regions=1\n"), std::string::npos);
    const LabelMap lm = read_label_map(read_file(path("l.pgm")));
    std::size_t labeled = 0;
    for (auto v : lm.pixels()) labeled += v == 1;
    EXPECT_EQ(labeled, 25u);
    EXPECT_TRUE(fs::exists(path("s.csv")));
    EXPECT_EQ(read_file(path("v.ppm")).size(), std::string("P6\n9 9\n255\n").size() + 3u * 81u);
}

TEST_F(CliTest, SegmentThresholdMatchesOtsuOnFilteredInput) {
    SynthSpec spec;
    spec.noise_sigma = 20;
    const SynthResult s = synth_cells(spec);
    save("cells.pgm", s.image);
    ASSERT_EQ(run({"segment", path("cells.pgm"), "--k", "4", "--out", path("l.pgm")}), 0) << err_.str();
    const std::string seg = out_.str();
    ASSERT_EQ(run({"otsu", path("cells.pgm"), "--median", "3"}), 0);
    const std::string thr = out_.str().substr(0, out_.str().find('\n') + 1);
    EXPECT_EQ(seg.substr(0, thr.size()), thr);
}

TEST_F(CliTest, ConstantImageIsPipelineFailure) {
    save("flat.pgm", GrayImage(8, 8, std::uint8_t{90}));
    EXPECT_EQ(run({"segment", path("flat.pgm"), "--k", "1", "--out", path("l.pgm")}), 3);
    EXPECT_NE(err_.str().find("degenerate histogram"), std::string::npos);
    EXPECT_EQ(err_.str().find('\n'), err_.str().size() - 1);
    EXPECT_EQ(run({"otsu", path("flat.pgm")}), 3);
}

TEST_F(CliTest, EvenWindowIsInvalid) {
    save("blob.pgm", blob_9x9());
    EXPECT_EQ(run({"segment", path("blob.pgm"), "--k", "1", "--r", "2", "--out", path("l.pgm")}), 2);
    EXPECT_FALSE(fs::exists(path("l.pgm")));
}

TEST_F(CliTest, OtherInvalidParameters) {
    save("blob.pgm", blob_9x9());
    const std::string in = path("blob.pgm");
    const std::string out = path("l.pgm");
    EXPECT_EQ(run({"segment", in, "--out", out}), 2);  // --k is required
    EXPECT_EQ(run({"segment", in, "--k", "0", "--out", out}), 2);
    EXPECT_EQ(run({"segment", in, "--k", "1", "--connectivity", "6", "--out", out}), 2);
    EXPECT_EQ(run({"segment", in, "--k", "1", "--median", "4", "--out", out}), 2);
    EXPECT_EQ(run({"segment", in, "--k", "1", "--polarity", "sideways", "--out", out}), 2);
    EXPECT_EQ(run({"segment", in, "--k", "1", "--fill-mode", "magic", "--out", out}), 2);
    EXPECT_EQ(run({"segment", in, "--k", "abc", "--out", out}), 2);
    EXPECT_EQ(run({"bogus"}), 2);
    EXPECT_EQ(run({}), 2);
}

TEST_F(CliTest, TooManySeedsRequestedIsPipelineFailure) {
    save("blob.pgm", blob_9x9());
    EXPECT_EQ(run({"segment", path("blob.pgm"), "--k", "50", "--out", path("l.pgm")}), 3);
}

TEST_F(CliTest, IoErrors) {
    EXPECT_EQ(run({"segment", path("missing.pgm"), "--k", "1", "--out", path("l.pgm")}), 1);
    write_file(path("bad.pgm"), std::string("P5\n4 4\n255\n\x01\x02"));
    EXPECT_EQ(run({"otsu", path("bad.pgm")}), 1);
    save("blob.pgm", blob_9x9());
    EXPECT_EQ(run({"segment", path("blob.pgm"), "--k", "1", "--out", path("no/such/dir/l.pgm")}), 1);
}

TEST_F(CliTest, SynthThenEval) {
    ASSERT_EQ(run({"synth", "--cells", "3", "--noise", "10", "--out", path("img.pgm"), "--gt-out", path("gt.pgm")}),
              0)
        << err_.str();
    EXPECT_EQ(out_.str(), "cells=3\n");
    ASSERT_EQ(run({"eval", path("gt.pgm"), path("gt.pgm")}), 0);
    EXPECT_NE(out_.str().find("mean_dice=1.000000\n"), std::string::npos);
    EXPECT_NE(out_.str().find("split_count=0\n"), std::string::npos);
}

TEST_F(CliTest, EvalDimensionMismatch) {
    write_file(path("a.pgm"), write_label_map(LabelMap(2, 2)));
    write_file(path("b.pgm"), write_label_map(LabelMap(3, 2)));
    EXPECT_EQ(run({"eval", path("a.pgm"), path("b.pgm")}), 2);
}

TEST_F(CliTest, HelpExitsCleanly) {
    EXPECT_EQ(run({"--help"}), 0);
    EXPECT_NE(out_.str().find("segment"), std::string::npos);
}

}  // namespace
}  // namespace seedgrow
