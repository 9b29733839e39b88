#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

namespace clitest {

struct Outcome {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string quote(const std::string& arg) {
  std::string q = "'";
  for (char c : arg) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

/// Runs `binary args` through the shell; stderr is captured via a side file.
inline Outcome run(const std::string& binary, const std::string& args, const std::filesystem::path& scratch) {
  const auto err_file = scratch / "stderr.txt";
  const std::string cmd = quote(binary) + " " + args + " 2>" + quote(err_file.string());
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  Outcome o;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), got);
  const int status = pclose(pipe);
  o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.err = slurp(err_file);
  return o;
}

/// Key/type skeleton of a document. Arrays keep the shape of their first element.
inline nlohmann::ordered_json schema_of(const nlohmann::ordered_json& v) {
  using J = nlohmann::ordered_json;
  if (v.is_object()) {
    J out = J::object();
    for (auto it = v.begin(); it != v.end(); ++it) out[it.key()] = schema_of(it.value());
    return out;
  }
  if (v.is_array()) return v.empty() ? J::array() : J::array({schema_of(v.front())});
  if (v.is_boolean()) return "boolean";
  if (v.is_number_integer()) return "integer";
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  return "null";
}

}  // namespace clitest
