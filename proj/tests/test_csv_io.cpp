#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "scghr/csv_io.hpp"
#include "scghr/synth.hpp"

using namespace scghr;

namespace {

std::string five_column_csv(std::size_t rows, double rate, std::size_t bad_flow_row = 0) {
  std::string s = "time,scg_z,ecg,flow,label\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const double t = static_cast<double>(i) / rate;
    const std::string flow = (i + 1 == bad_flow_row) ? "nan" : fmt::format("{}", std::cos(t));
    s += fmt::format("{},{},{},{},subj\n", t, std::sin(t), 0.5 * std::sin(3 * t), flow);
  }
  return s;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("scghr_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("csv_io") {

TEST_CASE("ingest: 10 kHz five-column file") {
  std::istringstream in(five_column_csv(20000, 10000.0));
  const auto rec = ingest(in, {}, {Channel::scg_z, Channel::ecg, Channel::flow});
  CHECK(rec.rate() == 10000.0);
  CHECK(rec.start_time() == 0.0);
  CHECK(rec.channels().size() == 3);
  CHECK(rec.at(Channel::flow).size() == 20000);
  CHECK(rec.at(Channel::scg_z)[1] == doctest::Approx(std::sin(1e-4)).epsilon(1e-12));
}

TEST_CASE("ingest: non-finite flow value names channel and row") {
  std::istringstream in(five_column_csv(3000, 1000.0, 1234));
  try {
    ingest(in);
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(std::string(e.what()).find("flow, row 1234") != std::string::npos);
    CHECK(e.row() == 1234);
    CHECK(e.column() == "flow");
  }
}

TEST_CASE("ingest: missing required column") {
  std::istringstream in("time,scg_z\n0,1\n0.01,2\n0.02,3\n");
  CHECK_THROWS_AS(ingest(in), IngestError);
  std::istringstream ok("time,scg_z\n0,1\n0.01,2\n0.02,3\n");
  CHECK(ingest(ok, {}, {Channel::scg_z}).rate() == doctest::Approx(100.0));
}

TEST_CASE("ingest: non-uniform time base is rejected") {
  std::istringstream in("time,scg_z,flow\n0,1,1\n0.01,2,1\n0.02,3,1\n0.035,4,1\n0.04,5,1\n");
  try {
    ingest(in);
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(std::string(e.what()).find("non-uniform") != std::string::npos);
  }
}

TEST_CASE("ingest: empty input and unparsable cells") {
  std::istringstream empty("");
  CHECK_THROWS_AS(ingest(empty), IngestError);
  std::istringstream bad("time,scg_z,flow\n0,1,1\n0.01,abc,1\n0.02,3,1\n");
  CHECK_THROWS_AS(ingest(bad), IngestError);
}

TEST_CASE("ingest: custom column mapping") {
  std::istringstream in("t_s,accel_z,resp\n1,0.1,0.2\n1.5,0.3,0.4\n2,0.5,0.6\n");
  ChannelMapping m;
  m.time_column = "t_s";
  m.columns[Channel::scg_z] = "accel_z";
  m.columns[Channel::flow] = "resp";
  const auto rec = ingest(in, m);
  CHECK(rec.rate() == 2.0);
  CHECK(rec.start_time() == 1.0);
  CHECK(rec.at(Channel::flow).samples() == std::vector<double>{0.2, 0.4, 0.6});
}

TEST_CASE("round trip: synthetic recording written and read back is identical") {
  SynthConfig cfg;
  cfg.duration_s = 10.0;
  cfg.seed = 11;
  cfg.label = "rt_subject";
  const auto rec = gen_recording(cfg).recording;
  const auto dir = temp_dir("roundtrip");
  const auto path = dir / "rt_subject.csv";
  write_recording_csv(path, rec);
  const auto back = ingest(path, {}, {Channel::scg_z, Channel::ecg, Channel::flow});
  CHECK(back.subject_meta() == "rt_subject");
  CHECK(back.rate() == rec.rate());
  for (const auto& [ch, w] : rec.channels()) CHECK(back.at(ch).samples() == w.samples());
  std::filesystem::remove_all(dir);
}

TEST_CASE("ingest: file errors carry the path") {
  const auto missing = std::filesystem::temp_directory_path() / "scghr_no_such_file.csv";
  try {
    ingest(missing);
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(std::string(e.what()).find("scghr_no_such_file.csv") != std::string::npos);
  }
}

}  // TEST_SUITE
