// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gsmibc/store.hpp"

#include <fstream>
#include <sstream>

#include "gsmibc/error.hpp"

namespace gsmibc::store
{
namespace
{
std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyFile KeyFile::parse(const std::string& text)
{
    KeyFile kf;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::malformed_message, "key file line without '=': " + line);
        kf.add(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kf;
}

KeyFile KeyFile::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void KeyFile::add(std::string key, std::string value)
{
    entries_.emplace_back(std::move(key), std::move(value));
}

void KeyFile::set(const std::string& key, std::string value)
{
    std::erase_if(entries_, [&](const auto& e) { return e.first == key; });
    add(key, std::move(value));
}

std::optional<std::string> KeyFile::get(const std::string& key) const
{
    for (const auto& [k, v] : entries_)
        if (k == key)
            return v;
    return std::nullopt;
}

std::string KeyFile::require(const std::string& key) const
{
    auto v = get(key);
    if (!v)
        throw Error(Errc::malformed_message, "key file lacks '" + key + "'");
    return *v;
}

std::vector<std::string> KeyFile::all(const std::string& key) const
{
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_)
        if (k == key)
            out.push_back(v);
    return out;
}

std::string KeyFile::str() const
{
    std::string out;
    if (!header_.empty())
        out += "# " + header_ + "\n";
    for (const auto& [k, v] : entries_)
        out += k + " = " + v + "\n";
    return out;
}

void KeyFile::save(const std::filesystem::path& path, bool private_file) const
{
    namespace fs = std::filesystem;
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(Errc::io, "cannot write " + path.string());
        out << str();
        if (!out)
            throw Error(Errc::io, "short write to " + path.string());
    }
    if (private_file) {
        std::error_code ec;
        fs::permissions(path, fs::perms::owner_read | fs::perms::owner_write, fs::perm_options::replace, ec);
        if (ec)
            throw Error(Errc::io, "cannot restrict permissions on " + path.string());
    }
}

}  // namespace gsmibc::store
