// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/cli.hpp"

#include <cstdint>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "larr/demo.hpp"
#include "larr/io.hpp"
#include "larr/render.hpp"

namespace larr {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

// A dataset table needs one item; --item picks it, a single-item set
// implies it.
std::string table_item(const Dataset &ds, const std::string &requested) {
  if (!requested.empty()) {
    if (!ds.has(requested))
      throw KeyError("no item '" + requested + "' in dataset");
    return requested;
  }
  if (ds.size() == 1)
    return ds.names().front();
  std::string names;
  for (const auto &n : ds.names())
    names += (names.empty() ? "" : ", ") + n;
  throw UnsupportedError("dataset holds " + std::to_string(ds.size()) +
                         " items (" + names + "); pick one with --item");
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"larr: labeled arrays with units, uncertainties, and event lists"};
  app.require_subcommand(1);

  std::string show_file;
  CLI::App *show = app.add_subcommand("show", "Print the structure of a saved document");
  show->add_option("file", show_file, "JSON document")->required();

  std::string table_file, item_name;
  CLI::App *table = app.add_subcommand("table", "Print 0-D or 1-D dense data as a table");
  table->add_option("file", table_file, "JSON document")->required();
  table->add_option("--item", item_name, "dataset item to tabulate");

  std::string validate_file;
  CLI::App *validate =
      app.add_subcommand("validate", "Check that a document loads and holds its invariants");
  validate->add_option("file", validate_file, "JSON document")->required();

  int64_t pixels = 64;
  int64_t events = 50000;
  uint64_t seed = 1;
  std::string demo_out = "demo_out";
  CLI::App *demo = app.add_subcommand("demo", "Run the synthetic reduction pipeline");
  demo->add_option("--pixels", pixels, "number of detector pixels")
      ->check(CLI::PositiveNumber);
  demo->add_option("--events", events, "approximate total event count")
      ->check(CLI::PositiveNumber);
  demo->add_option("--seed", seed, "generator seed");
  demo->add_option("--out", demo_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    // --help and friends.
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (show->parsed()) {
      const Document doc = load(show_file);
      std::visit([&](const auto &c) { out << render_structure(c); }, doc);
      return kExitOk;
    }
    if (table->parsed()) {
      const Document doc = load(table_file);
      if (const auto *da = std::get_if<DataArray>(&doc)) {
        if (!item_name.empty())
          throw UnsupportedError("--item only applies to dataset documents");
        out << render_table(*da);
      } else {
        const Dataset &ds = std::get<Dataset>(doc);
        out << render_table(ds.get(table_item(ds, item_name)));
      }
      return kExitOk;
    }
    if (validate->parsed()) {
      try {
        const Document doc = load(validate_file);
        std::visit([&](const auto &c) { out << render_structure(c); }, doc);
        out << "ok\n";
        return kExitOk;
      } catch (const IoError &) {
        throw; // unreadable input is not a verdict about the document
      } catch (const Error &e) {
        out << "invalid: " << e.what() << "\n";
        return kExitFailure;
      }
    }
    if (demo->parsed()) {
      run_demo(pixels, events, seed, demo_out, out);
      return kExitOk;
    }
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

} // namespace larr
