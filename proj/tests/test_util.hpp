#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>

#include "lingaff/tsv.hpp"

namespace testutil {

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        const int id = counter.fetch_add(1);
        path_ = std::filesystem::temp_directory_path() /
                ("lingaff_test_" + std::to_string(::getpid()) + "_" + std::to_string(id));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name, const std::string& content) const {
        const auto full = (path_ / name).string();
        lingaff::write_text_file(full, content);
        return full;
    }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
