// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gsmibc::store
{
/// Plain-text "key = value" records, one per line, '#' starts a comment.
/// Keys may repeat; order is preserved.
class KeyFile
{
public:
    static KeyFile parse(const std::string& text);
    /// Throws Errc::io when the file cannot be read.
    static KeyFile load(const std::filesystem::path& path);

    void add(std::string key, std::string value);
    /// Replaces every existing entry for key.
    void set(const std::string& key, std::string value);

    std::optional<std::string> get(const std::string& key) const;
    /// Throws Errc::malformed_message when missing.
    std::string require(const std::string& key) const;
    std::vector<std::string> all(const std::string& key) const;

    std::string str() const;
    /// Owner-only permissions when private_file is set. Throws Errc::io.
    void save(const std::filesystem::path& path, bool private_file = false) const;

    void set_header(std::string comment) { header_ = std::move(comment); }

private:
    std::string header_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace gsmibc::store
