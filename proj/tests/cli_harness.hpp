#pragma once

// Shared helpers for tests that drive the installed CLI binary: subprocess
// capture and a validator for the report schema subset the tool publishes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace cli_harness {

inline std::filesystem::path cli_dir() {
  auto dir = std::filesystem::temp_directory_path() / "fincat_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int exit = -1;
  std::string out;
  std::string err;
};

inline RunResult run_cli(const std::string& args) {
  auto dir = cli_dir();
  auto out = dir / "stdout.txt";
  auto err = dir / "stderr.txt";
  std::string cmd =
      std::string(FINCAT_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

// the subset of json schema the report schema uses
inline bool schema_ok(const nlohmann::json& schema, const nlohmann::json& value) {
  if (schema.contains("type")) {
    std::string t = schema["type"].get<std::string>();
    if (t == "object" && !value.is_object()) return false;
    if (t == "string" && !value.is_string()) return false;
    if (t == "integer" && !value.is_number_integer()) return false;
    if (t == "boolean" && !value.is_boolean()) return false;
    if (t == "array" && !value.is_array()) return false;
  }
  if (value.is_number_integer()) {
    if (schema.contains("minimum") && value.get<long long>() < schema["minimum"].get<long long>())
      return false;
    if (schema.contains("maximum") && value.get<long long>() > schema["maximum"].get<long long>())
      return false;
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!value.contains(k.get<std::string>())) return false;
    bool open = !schema.contains("additionalProperties") ||
                !schema["additionalProperties"].is_boolean() ||
                schema["additionalProperties"].get<bool>();
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (schema.contains("properties") && schema["properties"].contains(it.key())) {
        if (!schema_ok(schema["properties"][it.key()], it.value())) return false;
      } else if (!open) {
        return false;
      }
    }
  }
  if (value.is_array() && schema.contains("items"))
    for (const auto& item : value)
      if (!schema_ok(schema["items"], item)) return false;
  return true;
}

inline bool report_valid(const std::string& text) {
  static const nlohmann::json schema = nlohmann::json::parse(slurp(FINCAT_SCHEMA_PATH));
  nlohmann::json value = nlohmann::json::parse(text, nullptr, false);
  if (value.is_discarded()) return false;
  return schema_ok(schema, value);
}

} // namespace cli_harness
