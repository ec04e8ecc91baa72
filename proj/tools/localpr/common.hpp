#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "localpr/graph.hpp"
#include "localpr/random_model.hpp"

namespace cli {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

/// Bad flags, unreadable inputs or invalid parameter values.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Prefix for environment overrides: --max-touch reads LOCALPR_MAX_TOUCH.
std::string env_name(const std::string& flag);

/// A subcommand plus the resolved values of its options, in declaration order.
/// Options bind to members of the derived command, so instances stay put on
/// the heap for the whole run.
struct Command {
  explicit Command(CLI::App* sub) : app(sub) {}
  virtual ~Command() = default;
  Command(const Command&) = delete;
  Command& operator=(const Command&) = delete;

  virtual int run() = 0;

  CLI::App* app = nullptr;
  std::vector<std::pair<std::string, std::function<ordered_json()>>> fields;

  // Flags every subcommand carries.
  std::string out = "-";
  std::string format = "json";
  std::uint64_t rng_seed = 1;
  bool no_timestamp = false;

  template <class T>
  CLI::Option* option(const std::string& name, T& var, const std::string& desc) {
    CLI::Option* opt = app->add_option("--" + name, var, desc)->envname(env_name(name));
    if constexpr (!is_optional<T>::value) opt->capture_default_str();
    fields.emplace_back(name, [&var] { return value_json(var); });
    return opt;
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& desc);

  /// --out, --format, --rng-seed and --no-timestamp.
  void add_common(const std::vector<std::string>& formats);

  /// Tool name and version, subcommand, resolved options, rng seed and (unless
  /// suppressed) a UTC timestamp.
  ordered_json metadata() const;
  /// Same block as '#' comment lines, for text outputs.
  void write_metadata_comments(std::ostream& os) const;
  bool timing() const { return !no_timestamp; }

 private:
  template <class T>
  struct is_optional : std::false_type {};
  template <class T>
  struct is_optional<std::optional<T>> : std::true_type {};

  template <class T>
  static ordered_json value_json(const T& v) {
    if constexpr (is_optional<T>::value) {
      return v ? value_json(*v) : ordered_json(nullptr);
    } else {
      return ordered_json(v);
    }
  }
};

/// Output sink: a file, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path);
  std::ostream& stream() { return *os_; }
  void finish();

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

localpr::Graph load_graph(const std::string& path);
localpr::NodeSet load_nodes(const std::string& path);
nlohmann::json load_json(const std::string& path);

/// Model parameters from --model (file) or the individual flags.
struct ModelFlags {
  std::string model;
  std::optional<std::size_t> n;
  std::size_t k = 20;
  double p = 0.5;
  std::optional<double> q;
  std::optional<std::size_t> blocks;
  std::string background = "sbm";
  std::optional<double> q_bg, p_in, p_out;
  std::optional<std::size_t> cluster_size;

  void add(Command& cmd);
  localpr::LocalModelParams resolve() const;
};

std::unique_ptr<Command> make_generate(CLI::App& root);
std::unique_ptr<Command> make_solve(CLI::App& root);
std::unique_ptr<Command> make_sweep(CLI::App& root);
std::unique_ptr<Command> make_eval(CLI::App& root);
std::unique_ptr<Command> make_experiment(CLI::App& root);
std::unique_ptr<Command> make_check(CLI::App& root);

}  // namespace cli
