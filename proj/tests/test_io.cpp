#include <catch2/catch_amalgamated.hpp>

#include <rumple/io.hpp>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"

using namespace rumple;

TEST_CASE("mag text round-trips through parse and print") {
  for (const Magma& X : {fixtures::x41(), fixtures::x42(), fixtures::tworeps(),
                         fixtures::projection(1), fixtures::projection(7)}) {
    Magma back = parse_mag_string(to_mag(X));
    CHECK(back == X);
  }
}

TEST_CASE("mag parser accepts flexible whitespace and trailing blank lines") {
  Magma x41 = fixtures::x41();
  CHECK(parse_mag_string("magma 4\n0 1 3 2\n2 3 1 0\n1 0 2 3\n3 2 0 1\n") == x41);
  CHECK(parse_mag_string("magma 4\n0 1 3 2 2 3 1 0\n1 0 2 3\n3 2 0 1") == x41);
  CHECK(parse_mag_string("magma   4\n  0 1 3 2\n2 3 1 0\n1 0 2 3\n3 2 0 1\n\n  \n") == x41);
  CHECK(parse_mag_string("magma 1\n0\n") == fixtures::projection(1));
}

TEST_CASE("mag parser rejects malformed input") {
  auto bad = [](const std::string& text) {
    try {
      parse_mag_string(text);
      return false;
    } catch (const error& e) {
      return e.code == errc::parse_error;
    }
  };
  CHECK(bad(""));
  CHECK(bad("magma\n0\n"));
  CHECK(bad("magma 0\n"));
  CHECK(bad("magma -2\n"));
  CHECK(bad("magma x\n0\n"));
  CHECK(bad("magma 1 extra\n0\n"));
  CHECK(bad("table 2\n0 1\n1 0\n"));
  CHECK(bad("magma 2\n0 1\n1\n"));
  CHECK(bad("magma 2\n0 1\n1 0 0\n"));
  CHECK(bad("magma 2\n0 1\n1 2\n"));
  CHECK(bad("magma 2\n0 1\n1 -1\n"));
  CHECK(bad("magma 2\n0 1\n1 0\njunk\n"));
  CHECK(bad("magma 99999999\n"));
}

TEST_CASE("atomic file writes replace the target in one step") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "rumple_io_test";
  fs::create_directories(dir);
  fs::path target = dir / "out.mag";

  Magma x42 = fixtures::x42();
  atomic_write_file(target.string(), to_mag(x42));
  CHECK(read_mag_file(target.string()) == x42);

  Magma x41 = fixtures::x41();
  atomic_write_file(target.string(), to_mag(x41));
  CHECK(read_mag_file(target.string()) == x41);

  for (const auto& entry : fs::directory_iterator(dir))
    CHECK(entry.path() == target);
  fs::remove_all(dir);
}

TEST_CASE("reading a missing file fails cleanly") {
  try {
    read_mag_file("/nonexistent/rumple/file.mag");
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == errc::parse_error);
  }
}
