#include "rqk/dataset_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rqk {

static_assert(std::endian::native == std::endian::little,
              "container format is little-endian; byte swapping is not implemented");

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<int> split_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_container(const std::filesystem::path& dir, const Dataset& dataset) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("write_container: cannot create " + dir.string());

    {
        std::ofstream manifest(dir / "manifest.txt");
        if (!manifest) throw std::runtime_error("write_container: cannot open manifest for writing");
        manifest << "task=" << task_name(dataset.task) << '\n';
        manifest << "n_samples=" << dataset.n_samples() << '\n';
        manifest << "rows=" << dataset.rows << '\n';
        manifest << "cols=" << dataset.cols << '\n';
        manifest << "seed=" << dataset.generator_seed << '\n';
        manifest << "labels=" << join_ints(dataset.labels) << '\n';
        if (!dataset.clip_ids.empty()) manifest << "clip_ids=" << join_ints(dataset.clip_ids) << '\n';
        if (!dataset.window_indices.empty())
            manifest << "window_indices=" << join_ints(dataset.window_indices) << '\n';
        manifest << "config.carrier_hz=" << format_double(dataset.config.carrier_hz) << '\n';
        manifest << "config.bandwidth_hz=" << format_double(dataset.config.bandwidth_hz) << '\n';
        manifest << "config.chirp_duration_s=" << format_double(dataset.config.chirp_duration_s)
                 << '\n';
        manifest << "config.n_fast=" << dataset.config.n_fast << '\n';
        manifest << "config.n_chirps=" << dataset.config.n_chirps << '\n';
        manifest << "config.n_rx=" << dataset.config.n_rx << '\n';
        manifest << "config.sample_rate_hz=" << format_double(dataset.config.sample_rate_hz)
                 << '\n';
        manifest << "config.n_range_bins=" << dataset.config.n_range_bins << '\n';
        if (!manifest) throw std::runtime_error("write_container: manifest write failed");
    }

    const Eigen::Index dim = dataset.values.cols();
    std::vector<float> buffer(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dataset.n_samples(); ++i) {
        for (Eigen::Index j = 0; j < dim; ++j)
            buffer[static_cast<std::size_t>(j)] = static_cast<float>(dataset.values(i, j));
        const auto path = dir / ("sample_" + std::to_string(i) + ".bin");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("write_container: cannot open " + path.string());
        out.write(reinterpret_cast<const char*>(buffer.data()),
                  static_cast<std::streamsize>(buffer.size() * sizeof(float)));
        if (!out) throw std::runtime_error("write_container: write failed for " + path.string());
    }
}

Dataset load_container(const std::filesystem::path& dir) {
    std::ifstream manifest(dir / "manifest.txt");
    if (!manifest)
        throw std::runtime_error("load_container: missing manifest in " + dir.string());

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(manifest, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("load_container: malformed manifest line: " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }

    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::runtime_error("load_container: manifest is missing key '" + key + "'");
        return it->second;
    };

    Dataset ds;
    ds.task = task_from_name(need("task"));
    const long n = std::stol(need("n_samples"));
    ds.rows = std::stoi(need("rows"));
    ds.cols = std::stoi(need("cols"));
    ds.generator_seed = std::stoull(need("seed"));
    ds.labels = split_ints(need("labels"));
    if (kv.count("clip_ids")) ds.clip_ids = split_ints(kv["clip_ids"]);
    if (kv.count("window_indices")) ds.window_indices = split_ints(kv["window_indices"]);
    ds.config.carrier_hz = std::stod(need("config.carrier_hz"));
    ds.config.bandwidth_hz = std::stod(need("config.bandwidth_hz"));
    ds.config.chirp_duration_s = std::stod(need("config.chirp_duration_s"));
    ds.config.n_fast = std::stoi(need("config.n_fast"));
    ds.config.n_chirps = std::stoi(need("config.n_chirps"));
    ds.config.n_rx = std::stoi(need("config.n_rx"));
    ds.config.sample_rate_hz = std::stod(need("config.sample_rate_hz"));
    ds.config.n_range_bins = std::stoi(need("config.n_range_bins"));

    if (n < 0 || ds.rows < 1 || ds.cols < 1)
        throw std::runtime_error("load_container: malformed manifest dimensions");
    if (static_cast<long>(ds.labels.size()) != n)
        throw std::runtime_error("load_container: label count disagrees with n_samples");
    if (!ds.clip_ids.empty() && static_cast<long>(ds.clip_ids.size()) != n)
        throw std::runtime_error("load_container: clip id count disagrees with n_samples");

    const std::size_t dim = static_cast<std::size_t>(ds.rows) * ds.cols;
    ds.values.resize(n, static_cast<Eigen::Index>(dim));
    std::vector<float> buffer(dim);
    for (long i = 0; i < n; ++i) {
        const auto path = dir / ("sample_" + std::to_string(i) + ".bin");
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("load_container: missing sample file " + path.string());
        in.read(reinterpret_cast<char*>(buffer.data()),
                static_cast<std::streamsize>(dim * sizeof(float)));
        if (in.gcount() != static_cast<std::streamsize>(dim * sizeof(float)))
            throw std::runtime_error("load_container: short read in " + path.string());
        for (std::size_t j = 0; j < dim; ++j)
            ds.values(i, static_cast<Eigen::Index>(j)) = static_cast<double>(buffer[j]);
    }
    return ds;
}

}  // namespace rqk
