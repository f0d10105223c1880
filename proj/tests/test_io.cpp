#include <Eigen/Core>
#include <string>

#include "certann/dataset_io.hpp"
#include "certann/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace certann;

TEST_CASE("csv reader parses rows into columns") {
  testutil::TempDir tmp;
  const std::string path = tmp.file("points.csv");
  testutil::write_text(path, "1.0, 2.0\n3.5,-4.0\n");
  const Dataset data = read_csv(path);
  CHECK(data.size() == 2);
  CHECK(data.dim() == 2);
  CHECK(data.point(0)[0] == 1.0);
  CHECK(data.point(0)[1] == 2.0);
  CHECK(data.point(1)[0] == 3.5);
  CHECK(data.point(1)[1] == -4.0);
}

TEST_CASE("csv reader skips blank lines and tolerates missing trailing newline") {
  testutil::TempDir tmp;
  const std::string path = tmp.file("points.csv");
  testutil::write_text(path, "\n1,2,3\n\n  \n4,5,6");
  const Dataset data = read_csv(path);
  CHECK(data.size() == 2);
  CHECK(data.dim() == 3);
  CHECK(data.point(1)[2] == 6.0);
}

TEST_CASE("csv reader rejects malformed input") {
  testutil::TempDir tmp;
  const std::string path = tmp.file("bad.csv");

  testutil::write_text(path, "1,2\n3\n");
  CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("line 2"), data_error);
  CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("expected 2 values, got 1"), data_error);

  testutil::write_text(path, "1,banana\n");
  CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("invalid number 'banana'"), data_error);

  testutil::write_text(path, "1.5e\n");
  CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("invalid number"), data_error);

  testutil::write_text(path, "inf,1\n");
  CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("non-finite value 'inf'"), data_error);

  testutil::write_text(path, "");
  CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("empty dataset"), data_error);

  testutil::write_text(path, "\n   \n");
  CHECK_THROWS_WITH_AS(read_csv(path), doctest::Contains("empty dataset"), data_error);

  CHECK_THROWS_WITH_AS(read_csv(tmp.file("missing.csv")),
                       doctest::Contains("cannot open dataset file"), data_error);
}

TEST_CASE("fvecs files round-trip through the reader") {
  testutil::TempDir tmp;
  const std::string path = tmp.file("points.fvecs");
  RngStream rng(5);
  Eigen::MatrixXd points = testutil::gaussian_points(7, 13, rng, 2.0);
  // Values must survive the format's f32 storage exactly.
  points = points.cast<float>().cast<double>();
  testutil::write_fvecs(path, points);
  const Dataset data = read_fvecs(path);
  REQUIRE(data.size() == 13);
  REQUIRE(data.dim() == 7);
  CHECK((data.points().array() == points.array()).all());
}

TEST_CASE("fvecs reader rejects malformed input") {
  testutil::TempDir tmp;
  const std::string path = tmp.file("bad.fvecs");
  RngStream rng(6);
  const Eigen::MatrixXd points = testutil::gaussian_points(3, 2, rng);

  {
    testutil::write_fvecs(path, points);
    std::string bytes = testutil::read_file(path);
    bytes.resize(bytes.size() - 5);  // cut into the second record
    testutil::write_bytes(path, bytes);
    CHECK_THROWS_WITH_AS(read_fvecs(path), doctest::Contains("record 2"), data_error);
    CHECK_THROWS_WITH_AS(read_fvecs(path), doctest::Contains("truncated"), data_error);
  }
  {
    // Second record claims 4 components, first claims 3.
    testutil::write_fvecs(path, points);
    std::string bytes = testutil::read_file(path);
    bytes[16] = 4;  // dimension field of record 2 (4 + 3*4 bytes in)
    testutil::write_bytes(path, bytes);
    CHECK_THROWS_WITH_AS(read_fvecs(path), doctest::Contains("record 2"), data_error);
  }
  {
    testutil::write_fvecs(path, points);
    std::string bytes = testutil::read_file(path);
    bytes[0] = 0;  // dimension 0
    testutil::write_bytes(path, bytes);
    CHECK_THROWS_WITH_AS(read_fvecs(path), doctest::Contains("zero dimension"), data_error);
  }
  testutil::write_bytes(path, "");
  CHECK_THROWS_WITH_AS(read_fvecs(path), doctest::Contains("empty dataset"), data_error);
}

TEST_CASE("format is inferred from the file extension") {
  CHECK(format_from_extension("data/points.csv") == DataFormat::csv);
  CHECK(format_from_extension("points.txt") == DataFormat::csv);
  CHECK(format_from_extension("no_extension") == DataFormat::csv);
  CHECK(format_from_extension("base.fvec") == DataFormat::fvec);
  CHECK(format_from_extension("sift/base.fvecs") == DataFormat::fvec);
}

TEST_CASE("read_dataset dispatches on the requested format") {
  testutil::TempDir tmp;
  RngStream rng(7);
  Eigen::MatrixXd points = testutil::gaussian_points(4, 5, rng);
  points = points.cast<float>().cast<double>();

  const std::string fv = tmp.file("pts.fvecs");
  testutil::write_fvecs(fv, points);
  CHECK(read_dataset(fv, DataFormat::fvec).size() == 5);

  const std::string csv = tmp.file("pts.csv");
  testutil::write_text(csv, testutil::csv_of(points));
  const Dataset via_csv = read_dataset(csv, DataFormat::csv);
  CHECK(via_csv.dim() == 4);
  CHECK((via_csv.points() - points).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single vectors parse from comma-separated text") {
  const Eigen::VectorXd v = parse_vector(" 1.5, -2 ,3e2 ");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.5);
  CHECK(v[1] == -2.0);
  CHECK(v[2] == 300.0);

  CHECK_THROWS_WITH_AS(parse_vector(""), doctest::Contains("empty vector"), data_error);
  CHECK_THROWS_WITH_AS(parse_vector("1,,2"), doctest::Contains("invalid number"), data_error);
  CHECK_THROWS_WITH_AS(parse_vector("nan"), doctest::Contains("non-finite"), data_error);
}
