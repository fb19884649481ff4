// Command-line front end. Links only against the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "optosteer/optosteer.h"

namespace {

constexpr int kExitConfig = 1;

struct ConfigDeleter {
  void operator()(ost_config* c) const { ost_config_free(c); }
};
struct ResultDeleter {
  void operator()(ost_result* r) const { ost_result_free(r); }
};

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_data(const char* path, const char* data, std::size_t size) {
  if (path == nullptr) {
    return std::fwrite(data, 1, size, stdout) == size && std::fflush(stdout) == 0;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data, static_cast<std::streamsize>(size));
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian steering and Renyi-2 entanglement of two optomechanical mirrors"};
  app.set_version_flag("--version", ost_version());

  std::string config_path, mode, panel, format, out_path, epsilon;
  std::string positional_mode, positional_panel;
  app.add_option("mode_arg", positional_mode, "Mode (eval, sweep, figure, regime, stationary)");
  app.add_option("panel_arg", positional_panel, "Figure panel for figure mode");
  app.add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "Mode, overrides run.mode");
  app.add_option("--panel", panel, "Panel id (2a-2d, 3a-3d, 3inset), overrides run.panel");
  app.add_option("--format", format, "csv or json, overrides output.format");
  app.add_option("--out", out_path, "Output file, overrides output.path");
  app.add_option("--epsilon", epsilon, "Steering positivity tolerance, overrides run.epsilon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::string text;
  if (!config_path.empty() && !read_file(config_path, text)) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return kExitConfig;
  }

  if (mode.empty()) mode = positional_mode;
  if (panel.empty()) panel = positional_panel;
  std::vector<const char*> keys, values;
  auto override_with = [&](const char* key, const std::string& value) {
    if (value.empty()) return;
    keys.push_back(key);
    values.push_back(value.c_str());
  };
  override_with("run.mode", mode);
  override_with("run.panel", panel);
  override_with("output.format", format);
  override_with("output.path", out_path);
  override_with("run.epsilon", epsilon);

  ost_config* raw_config = nullptr;
  const ost_status parsed =
      ost_config_parse(text.c_str(), keys.data(), values.data(), keys.size(), &raw_config);
  std::unique_ptr<ost_config, ConfigDeleter> config(raw_config);
  if (parsed != OST_OK) {
    const char* kind = parsed == OST_ERR_CONFIG ? "ConfigError" : ost_status_string(parsed);
    std::cerr << "error (" << kind << "): " << ost_last_error() << "\n";
    return kExitConfig;
  }

  ost_result* raw_result = nullptr;
  if (ost_run(config.get(), &raw_result) != OST_OK) {
    std::cerr << "error: " << ost_last_error() << "\n";
    return 2;
  }
  std::unique_ptr<ost_result, ResultDeleter> result(raw_result);

  std::cerr << ost_result_diagnostics(result.get());
  const int code = ost_result_exit_code(result.get());
  if (code != 0) return code;

  const char* path = ost_config_output_path(config.get());
  if (!write_data(path, ost_result_data(result.get()), ost_result_data_size(result.get()))) {
    std::cerr << "error: cannot write output" << (path ? std::string(" to ") + path : "") << "\n";
    return kExitConfig;
  }
  return 0;
}
