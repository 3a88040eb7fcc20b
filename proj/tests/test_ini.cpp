#include "doctest.h"

#include <qrm/ini.hpp>

#include <functional>
#include <string>

using namespace qrm;

namespace {

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("ini parsing covers sections, comments, and duplicate keys") {
  const std::string text =
      "# leading comment\n"
      "[solver]\n"
      "lambda = 12.5\n"
      "; alt comment\n"
      "k_max=50\n"
      "lambda = 14\n"
      "\n"
      "[data]\n"
      "m_list = 240, 260 ,280\n"
      "sigma_list = 0.01,0.05\n"
      "name = run one\n"
      "seed = 12345678901\n";
  const IniFile ini = IniFile::parse(text, "test.ini");

  CHECK(ini.has_section("solver"));
  CHECK(ini.has_section("data"));
  CHECK_FALSE(ini.has_section("missing"));
  CHECK(ini.has("solver", "lambda"));
  CHECK_FALSE(ini.has("solver", "rho"));

  CHECK(ini.get_double("solver", "lambda") == 14.0); // last duplicate wins
  CHECK(ini.get_int("solver", "k_max") == 50);
  CHECK(ini.get_string("data", "name") == "run one");
  CHECK(ini.get_u64("data", "seed", 0) == 12345678901ULL);
  CHECK(ini.get_u64("data", "nope", 77) == 77);
  CHECK(ini.get_double("solver", "rho", 10.0) == 10.0);
  CHECK(ini.get_int("solver", "j_max", 200) == 200);
  CHECK(ini.get_string("solver", "trace", "off") == "off");

  CHECK(ini.get_int_list("data", "m_list") == std::vector<int>{240, 260, 280});
  CHECK(ini.get_double_list("data", "sigma_list") ==
        std::vector<double>{0.01, 0.05});
  CHECK(ini.text() == text);
  CHECK(ini.name() == "test.ini");
}

TEST_CASE("missing keys name the key and section") {
  const IniFile ini = IniFile::parse("[solver]\nrho = 1\n", "cfg.ini");
  const std::string msg =
      message_of([&] { ini.get_double("solver", "lambda"); });
  CHECK(msg.find("lambda") != std::string::npos);
  CHECK(msg.find("[solver]") != std::string::npos);
  CHECK(msg.find("cfg.ini") != std::string::npos);
}

TEST_CASE("malformed numbers report the file and line") {
  const IniFile ini =
      IniFile::parse("[s]\na = 1\nb = fast\nc = 2.5x\n", "bad.ini");
  const std::string m1 = message_of([&] { ini.get_int("s", "b"); });
  CHECK(m1.find("bad.ini:3") != std::string::npos);
  CHECK(m1.find("fast") != std::string::npos);
  const std::string m2 = message_of([&] { ini.get_double("s", "c"); });
  CHECK(m2.find("bad.ini:4") != std::string::npos);
  // Floats are not silently truncated to ints.
  CHECK_THROWS_AS(ini.get_int("s", "c"), ConfigError);
}

TEST_CASE("structural errors carry line numbers") {
  CHECK_THROWS_AS(IniFile::parse("[open\n", "x.ini"), ConfigError);
  CHECK_THROWS_AS(IniFile::parse("[]\n", "x.ini"), ConfigError);
  CHECK_THROWS_AS(IniFile::parse("[s]\n= 3\n", "x.ini"), ConfigError);
  CHECK_THROWS_AS(IniFile::parse("[s]\nnoequals\n", "x.ini"), ConfigError);
  const std::string msg =
      message_of([] { IniFile::parse("key = 1\n[broken\n", "y.ini"); });
  CHECK(msg.find("y.ini:2") != std::string::npos);
}

TEST_CASE("list parsing rejects empty elements") {
  const IniFile ini = IniFile::parse("[d]\nxs = 1,,3\nys =\n", "l.ini");
  CHECK_THROWS_AS(ini.get_int_list("d", "xs"), ConfigError);
  CHECK_THROWS_AS(ini.get_double_list("d", "ys"), ConfigError);
  CHECK_THROWS_AS(ini.get_int_list("d", "absent"), ConfigError);
}

TEST_CASE("keys outside any section live in the unnamed section") {
  const IniFile ini = IniFile::parse("top = 3\n[s]\nx = 1\n", "t.ini");
  CHECK(ini.get_int("", "top") == 3);
  CHECK(ini.get_int("s", "x") == 1);
}
