// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Classifier-bank persistence. The on-disk format is a single JSON document
// with a format-version field; keys are emitted sorted and floats in
// shortest round-trip form, so save -> load -> save is byte-identical.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zharec/errors.hpp"
#include "zharec/recognizer.hpp"

namespace zharec {

inline constexpr int kBankFormatVersion = 1;

namespace detail {

inline std::string window_name(WindowType w) {
  return w == WindowType::kHamming ? "hamming" : "rectangular";
}

inline WindowType window_from_name(const std::string& s) {
  if (s == "hamming") return WindowType::kHamming;
  if (s == "rectangular") return WindowType::kRectangular;
  throw ModelFormatError("model file: unknown window type \"" + s + "\"");
}

inline std::string grid_mode_name(SpectrumGridMode m) {
  return m == SpectrumGridMode::kHalfBinCentered ? "half-bin" : "bin-start";
}

inline SpectrumGridMode grid_mode_from_name(const std::string& s) {
  if (s == "half-bin") return SpectrumGridMode::kHalfBinCentered;
  if (s == "bin-start") return SpectrumGridMode::kBinStart;
  throw ModelFormatError("model file: unknown grid mode \"" + s + "\"");
}

}  // namespace detail

inline std::string bank_to_string(const ClassifierBank& bank) {
  nlohmann::json j;
  j["format"] = "zharec-bank";
  j["format_version"] = kBankFormatVersion;
  j["classes"] = bank.classes;
  j["front_end"] = {
      {"frame_len", bank.front_end.framing.frame_len},
      {"hop", bank.front_end.framing.hop},
      {"window", detail::window_name(bank.front_end.framing.window)},
      {"preemphasis", bank.front_end.framing.preemphasis},
      {"order", bank.front_end.lpc.order},
      {"cepstrum_len", bank.front_end.lpc.cepstrum_len},
      {"spectrum_grid_len", bank.front_end.lpc.spectrum_grid_len},
      {"grid_mode", detail::grid_mode_name(bank.front_end.lpc.grid_mode)},
  };
  j["codebook"] = bank.codebook.centroids;
  nlohmann::json models = nlohmann::json::array();
  for (const HmmModel& m : bank.models) {
    models.push_back({{"pi", m.pi}, {"trans", m.trans}, {"emit", m.emit}});
  }
  j["models"] = std::move(models);
  return j.dump(2) + "\n";
}

inline ClassifierBank bank_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(std::string("model file: not valid JSON: ") + e.what());
  }

  try {
    if (j.at("format").get<std::string>() != "zharec-bank") {
      throw ModelFormatError("model file: unrecognized format tag");
    }
    if (j.at("format_version").get<int>() != kBankFormatVersion) {
      throw ModelFormatError("model file: unsupported format_version " +
                             j.at("format_version").dump());
    }

    ClassifierBank bank;
    bank.classes = j.at("classes").get<std::vector<std::string>>();
    const nlohmann::json& fe = j.at("front_end");
    bank.front_end.framing.frame_len = fe.at("frame_len").get<int>();
    bank.front_end.framing.hop = fe.at("hop").get<int>();
    bank.front_end.framing.window = detail::window_from_name(fe.at("window").get<std::string>());
    bank.front_end.framing.preemphasis = fe.at("preemphasis").get<double>();
    bank.front_end.lpc.order = fe.at("order").get<int>();
    bank.front_end.lpc.cepstrum_len = fe.at("cepstrum_len").get<int>();
    bank.front_end.lpc.spectrum_grid_len = fe.at("spectrum_grid_len").get<int>();
    bank.front_end.lpc.grid_mode = detail::grid_mode_from_name(fe.at("grid_mode").get<std::string>());
    bank.codebook.centroids = j.at("codebook").get<std::vector<std::vector<double>>>();
    for (const nlohmann::json& jm : j.at("models")) {
      HmmModel m;
      m.pi = jm.at("pi").get<std::vector<double>>();
      m.trans = jm.at("trans").get<std::vector<std::vector<double>>>();
      m.emit = jm.at("emit").get<std::vector<std::vector<double>>>();
      bank.models.push_back(std::move(m));
    }

    if (bank.classes.size() != bank.models.size() || bank.classes.size() < 2) {
      throw ModelFormatError("model file: class/model counts are inconsistent");
    }
    validate(bank.front_end.framing);
    validate(bank.front_end.lpc, bank.front_end.framing.frame_len);
    if (static_cast<int>(bank.codebook.dim()) != bank.front_end.lpc.cepstrum_len) {
      throw ModelFormatError("model file: codebook dimension does not match cepstrum_len");
    }
    for (const HmmModel& m : bank.models) {
      validate(m);
      if (m.n_symbols() != static_cast<int>(bank.codebook.size())) {
        throw ModelFormatError("model file: emission width does not match codebook size");
      }
    }
    return bank;
  } catch (const nlohmann::json::exception& e) {
    throw ModelFormatError(std::string("model file: missing or mistyped field: ") + e.what());
  } catch (const InvalidConfig& e) {
    throw ModelFormatError(std::string("model file: invalid parameters: ") + e.what());
  }
}

inline void save_bank(const ClassifierBank& bank, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_bank: cannot open file for writing: " + path);
  out << bank_to_string(bank);
  if (!out) throw IoError("save_bank: write failed: " + path);
}

inline ClassifierBank load_bank(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_bank: cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return bank_from_string(ss.str());
}

}  // namespace zharec
