#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "common.hpp"
#include "localpr/errors.hpp"
#include "localpr/solve_result.hpp"

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// key = value lines; "[name]" starts a section that applies only to that
// subcommand. '#' and ';' start comments.
struct ConfigFile {
  std::vector<std::pair<std::string, std::string>> global;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
};

ConfigFile read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::UsageError("cannot open config file " + path);
  ConfigFile cfg;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw cli::UsageError(path + ":" + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw cli::UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    auto kv = std::make_pair(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    if (section.empty()) {
      cfg.global.push_back(std::move(kv));
    } else {
      cfg.sections[section].push_back(std::move(kv));
    }
  }
  return cfg;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const std::string& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Precedence is flag > environment > config file > built-in default, so config
// values are spliced in as flags only where neither of the first two is set.
std::vector<std::string> merge_config(std::vector<std::string> args, const CLI::App& root) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) {
    if (const char* env = std::getenv("LOCALPR_CONFIG")) path = env;
  }
  if (path.empty()) return args;

  // Subcommand is the first argument naming one.
  std::size_t sub_pos = 0;
  const CLI::App* sub = nullptr;
  for (std::size_t i = 1; i < args.size() && sub == nullptr; ++i) {
    for (const CLI::App* s : root.get_subcommands({})) {
      if (s->get_name() == args[i]) {
        sub = s;
        sub_pos = i;
        break;
      }
    }
  }
  if (sub == nullptr) return args;

  const ConfigFile cfg = read_config(path);
  std::vector<std::string> extra;
  auto apply = [&](const std::pair<std::string, std::string>& kv, bool strict) {
    const std::string& key = kv.first;
    const CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
    }
    if (opt == nullptr) {
      if (strict) throw cli::UsageError("unknown key '" + key + "' in [" + sub->get_name() + "] of " + path);
      return;
    }
    if (given_on_command_line(args, key)) return;
    if (std::getenv(cli::env_name(key).c_str()) != nullptr) return;
    extra.push_back("--" + key + "=" + kv.second);
  };
  for (const auto& kv : cfg.global) apply(kv, false);
  if (auto it = cfg.sections.find(sub->get_name()); it != cfg.sections.end()) {
    for (const auto& kv : it->second) apply(kv, true);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App root{"Local graph clustering with l1-regularized PageRank", "localpr"};
  root.set_version_flag("--version", std::string("localpr ") + LOCALPR_VERSION_STRING);
  root.require_subcommand(1);
  root.set_help_all_flag("--help-all", "Help for every subcommand");
  root.add_option("--config", "key = value file with default flag values (env LOCALPR_CONFIG)");

  std::vector<std::unique_ptr<cli::Command>> commands;
  commands.push_back(cli::make_generate(root));
  commands.push_back(cli::make_solve(root));
  commands.push_back(cli::make_sweep(root));
  commands.push_back(cli::make_eval(root));
  commands.push_back(cli::make_experiment(root));
  commands.push_back(cli::make_check(root));

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = merge_config(std::move(args), root);
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    root.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int rc = root.exit(e);
    return rc == 0 ? cli::kExitOk : cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "localpr: " << e.what() << '\n';
    return cli::kExitUsage;
  }

  for (auto& cmd : commands) {
    if (!cmd->app->parsed()) continue;
    try {
      return cmd->run();
    } catch (const localpr::LocalityBudgetExceeded& e) {
      std::cerr << "localpr: " << e.what() << '\n';
      return cli::kExitInvariant;
    } catch (const cli::UsageError& e) {
      std::cerr << "localpr: " << e.what() << '\n';
      return cli::kExitUsage;
    } catch (const localpr::Error& e) {
      std::cerr << "localpr: " << e.what() << '\n';
      return cli::kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "localpr: internal error: " << e.what() << '\n';
      return cli::kExitInvariant;
    }
  }
  return cli::kExitUsage;
}
