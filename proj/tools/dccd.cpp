// dccd: covert-domain computation toolkit command line.
//
// Sender/receiver roles (keygen, embed, extract, recover), the server
// role (compute), and the experiment harness (exp-*).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dccd/covert.hpp"
#include "dccd/experiments.hpp"
#include "dccd/pgm.hpp"
#include "dccd/stego.hpp"

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    out << text;
  }
}

dccd::MatrixMode parse_mode(const std::string& mode) {
  if (mode == "general") return dccd::MatrixMode::kGeneral;
  if (mode == "permutation") return dccd::MatrixMode::kPermutation;
  throw std::runtime_error("unknown mode: " + mode);
}

void write_feature_file(std::ostream& out, const std::string& id,
                        const dccd::FeatureVector& feats) {
  out << id;
  char buf[32];
  for (double v : feats) {
    std::snprintf(buf, sizeof buf, " %.10g", v);
    out << buf;
  }
  out << "\n";
}

const std::vector<std::size_t> kDefaultCapacities = {1000, 2000, 3000, 4000, 5000};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"data computing in the covert domain (LSB matrix embedding)"};
  app.require_subcommand(1);

  std::string key_text, in_path, in2_path, out_path, bits_path, corpus_dir;
  std::string case_name, semantics_name = "gf2", mode_name = "general";
  std::string features_dir;
  std::size_t capacity = 1000, trials = 100, runs = 5, reps = 10, images = 200;
  std::size_t width = 512, height = 512;
  std::uint64_t seed = 1;
  bool minimize = false;
  std::vector<std::size_t> capacities;

  auto* keygen = app.add_subcommand("keygen", "generate a random hiding key");
  std::optional<std::uint64_t> keygen_seed;
  keygen->add_option("--seed", keygen_seed, "deterministic seed");
  keygen->add_option("--out", out_path, "write the key here instead of stdout");

  auto* embed_cmd = app.add_subcommand("embed", "hide a payload in a cover image");
  embed_cmd->add_option("--in", in_path, "cover PGM")->required();
  embed_cmd->add_option("--key", key_text, "hiding key string")->required();
  embed_cmd->add_option("--bits", bits_path, "payload file (packed bits, MSB first)")
      ->required();
  embed_cmd->add_option("--capacity", capacity, "payload length in bits")->required();
  embed_cmd->add_option("--out", out_path, "stego PGM")->required();
  embed_cmd->add_option("--mode", mode_name, "general|permutation (permutation needs capacity = w*r)");
  embed_cmd->add_flag("--minimize", minimize, "exhaustive minimum-weight solve (w*r <= 24)");

  auto* extract_cmd = app.add_subcommand("extract", "extract a payload from a stego image");
  extract_cmd->add_option("--in", in_path, "stego PGM")->required();
  extract_cmd->add_option("--key", key_text, "hiding key string")->required();
  extract_cmd->add_option("--capacity", capacity, "payload length in bits")->required();
  extract_cmd->add_option("--out", out_path, "payload file")->required();
  extract_cmd->add_option("--mode", mode_name, "general|permutation");

  auto* compute_cmd = app.add_subcommand("compute", "server-side covert computation");
  compute_cmd->add_option("--case", case_name, "add|outer|inner")->required();
  compute_cmd->add_option("--in", in_path, "stego Y1 (PGM)")->required();
  compute_cmd->add_option("--in2", in2_path, "stego Y2 (PGM)")->required();
  compute_cmd->add_option("--out", out_path, "covert result container")->required();
  compute_cmd->add_option("--semantics", semantics_name, "gf2|int (inner case)");

  auto* recover_cmd = app.add_subcommand("recover", "receiver-side result recovery");
  recover_cmd->add_option("--in", in_path, "covert result container")->required();
  recover_cmd->add_option("--key", key_text, "hiding key string (add/outer)");
  recover_cmd->add_option("--capacity", capacity, "payload length in bits (add/outer)");
  recover_cmd->add_option("--out", out_path, "output file");

  auto* exp_feas = app.add_subcommand("exp-feasibility", "difference ratios for the three cases");
  exp_feas->add_option("--seed", seed, "experiment seed");
  exp_feas->add_option("--capacity", capacity, "payload bits for the add case");
  exp_feas->add_option("--trials", trials, "trials per case");
  exp_feas->add_option("--width", width, "cover width");
  exp_feas->add_option("--height", height, "cover height");
  exp_feas->add_option("--out", out_path, "report file (default stdout)");

  auto* exp_sec = app.add_subcommand("exp-security", "extraction error with/without the key");
  exp_sec->add_option("--seed", seed, "experiment seed");
  exp_sec->add_option("--trials", trials, "trials per capacity");
  exp_sec->add_option("--capacity", capacities, "capacities (repeatable; default 1000..5000)");
  exp_sec->add_option("--out", out_path, "report file (default stdout)");

  auto* exp_time = app.add_subcommand("exp-timing", "pipeline wall clock vs toy RSA-256");
  exp_time->add_option("--seed", seed, "experiment seed");
  exp_time->add_option("--capacity", capacities, "capacities (repeatable; default 1000..5000)");
  exp_time->add_option("--runs", runs, "timed runs per value (median)");
  exp_time->add_option("--out", out_path, "report file (default stdout)");

  auto* exp_steg = app.add_subcommand("exp-steganalysis", "SPAM + ensemble P_E sweep");
  exp_steg->add_option("--corpus", corpus_dir, "directory of cover .pgm images");
  exp_steg->add_option("--capacity", capacities, "capacities (repeatable; default 1000..5000; 0 = control)");
  exp_steg->add_option("--seed", seed, "experiment seed");
  exp_steg->add_option("--reps", reps, "seeded 50/50 split repetitions");
  exp_steg->add_option("--images", images, "synthetic corpus size when --corpus is absent");
  exp_steg->add_option("--width", width, "synthetic cover width");
  exp_steg->add_option("--height", height, "synthetic cover height");
  exp_steg->add_option("--features-out", features_dir, "also write SPAM feature files here");
  exp_steg->add_option("--out", out_path, "report file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*keygen) {
      std::uint64_t s;
      if (keygen_seed) {
        s = *keygen_seed;
      } else {
        std::random_device rd;
        s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
      }
      dccd::Xoshiro256ss rng(s);
      char hex[33];
      std::snprintf(hex, sizeof hex, "%016llx%016llx",
                    static_cast<unsigned long long>(rng.next()),
                    static_cast<unsigned long long>(rng.next()));
      emit_text(std::string(hex) + "\n", out_path);
    } else if (*embed_cmd) {
      const dccd::GrayImage cover = dccd::load_pgm(in_path);
      const auto payload_bytes = read_file(bits_path);
      const dccd::Payload m = dccd::payload_from_bytes(payload_bytes, capacity);
      const dccd::HidingKey key(key_text);
      const dccd::MatrixMode mode = parse_mode(mode_name);
      if (minimize && mode != dccd::MatrixMode::kGeneral)
        throw std::runtime_error("--minimize requires --mode general");
      const dccd::GrayImage stego =
          minimize ? dccd::embed(cover, m, key, true)
                   : dccd::StegoCodec(key, capacity, cover.width(), cover.height(), mode)
                         .embed(cover, m);
      dccd::save_pgm(out_path, stego);
    } else if (*extract_cmd) {
      const dccd::GrayImage stego = dccd::load_pgm(in_path);
      const dccd::HidingKey key(key_text);
      const dccd::MatrixMode mode = parse_mode(mode_name);
      const dccd::Payload m =
          dccd::StegoCodec(key, capacity, stego.width(), stego.height(), mode)
              .extract(stego);
      write_file(out_path, dccd::payload_to_bytes(m));
    } else if (*compute_cmd) {
      const dccd::GrayImage y1 = dccd::load_pgm(in_path);
      const dccd::GrayImage y2 = dccd::load_pgm(in2_path);
      dccd::CovertResult res;
      if (case_name == "add") {
        res = dccd::covert_add(y1, y2);
      } else if (case_name == "outer") {
        res = dccd::covert_outer(y1, y2);
      } else if (case_name == "inner") {
        if (semantics_name != "gf2" && semantics_name != "int")
          throw std::runtime_error("unknown semantics: " + semantics_name);
        res = dccd::covert_inner(y1, y2,
                                 semantics_name == "gf2"
                                     ? dccd::InnerSemantics::kGf2
                                     : dccd::InnerSemantics::kInteger);
      } else {
        throw std::runtime_error("unknown case: " + case_name);
      }
      write_file(out_path, dccd::serialize_result(res));
    } else if (*recover_cmd) {
      const auto bytes = read_file(in_path);
      const dccd::CovertResult res = dccd::parse_result(bytes);
      switch (res.kind) {
        case dccd::CovertCase::kAdd: {
          if (key_text.empty()) throw std::runtime_error("--key required for the add case");
          if (out_path.empty()) throw std::runtime_error("--out required for the add case");
          const dccd::Payload m =
              dccd::recover_add(res, dccd::HidingKey(key_text), capacity);
          write_file(out_path, dccd::payload_to_bytes(m));
          break;
        }
        case dccd::CovertCase::kOuter: {
          if (key_text.empty()) throw std::runtime_error("--key required for the outer case");
          if (out_path.empty()) throw std::runtime_error("--out required for the outer case");
          const dccd::BitMatrix m =
              dccd::recover_outer(res, dccd::HidingKey(key_text), capacity);
          write_file(out_path, m.to_packed_bytes());
          std::cout << "outer " << m.rows() << " " << m.cols() << "\n";
          break;
        }
        case dccd::CovertCase::kInner: {
          const std::string text = std::to_string(dccd::recover_inner(res)) + "\n";
          emit_text(text, out_path);
          break;
        }
      }
    } else if (*exp_feas) {
      const auto report =
          dccd::run_feasibility(seed, capacity, {width, height}, trials);
      emit_text(dccd::format_report(report), out_path);
    } else if (*exp_sec) {
      if (capacities.empty()) capacities = kDefaultCapacities;
      const auto report = dccd::run_security(seed, trials, capacities);
      emit_text(dccd::format_report(report), out_path);
    } else if (*exp_time) {
      if (capacities.empty()) capacities = kDefaultCapacities;
      const auto report = dccd::run_timing(seed, capacities, runs);
      emit_text(dccd::format_report(report), out_path);
    } else if (*exp_steg) {
      if (capacities.empty()) capacities = kDefaultCapacities;
      std::vector<dccd::GrayImage> corpus;
      if (corpus_dir.empty()) {
        corpus = dccd::synth_corpus(seed, images, {width, height});
      } else {
        namespace fs = std::filesystem;
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(corpus_dir))
          if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) corpus.push_back(dccd::load_pgm(p.string()));
      }
      const auto report = dccd::run_steganalysis(corpus, capacities, seed, reps);
      if (!features_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(features_dir);
        std::ofstream cov(fs::path(features_dir) / "cover.feats");
        for (std::size_t i = 0; i < corpus.size(); ++i)
          write_feature_file(cov, "cover-" + std::to_string(i),
                             dccd::spam_features(corpus[i]));
        for (const std::size_t k : capacities) {
          if (k == 0) continue;
          const dccd::HidingKey key =
              dccd::detail::key_from_seed(dccd::detail::derive_seed(seed, 40, k));
          std::map<std::pair<std::size_t, std::size_t>, dccd::StegoCodec> codecs;
          std::ofstream steg(fs::path(features_dir) /
                             ("stego_" + std::to_string(k) + ".feats"));
          for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto dims = std::make_pair(corpus[i].width(), corpus[i].height());
            if (!codecs.contains(dims))
              codecs.try_emplace(dims, key, k, dims.first, dims.second);
            const dccd::Payload m = dccd::detail::random_payload(
                dccd::detail::derive_seed(seed, 41, k * 2246822519u + i), k);
            write_feature_file(steg, "stego-" + std::to_string(i),
                               dccd::spam_features(codecs.at(dims).embed(corpus[i], m)));
          }
        }
      }
      emit_text(dccd::format_report(report), out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "dccd: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
