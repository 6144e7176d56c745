// gsm-ibc: identity-based authenticated key exchange for GSM networks
// Copyright 2026 The gsm-ibc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsmibc
{
enum class Errc
{
    invalid_point,
    not_in_subgroup,
    division_by_zero,
    non_residue,
    iteration_limit,
    degenerate_key,
    bad_profile,
    malformed_message,
    unknown_subscriber,
    replay_detected,
    ms_auth_failure,
    vlr_auth_failure,
    signature_invalid,
    network_auth_failure,
    session_state,
    duplicate_subscriber,
    io,
    internal,
};

/// Stable kebab-case name, used in CLI output and transcripts.
std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace gsmibc
