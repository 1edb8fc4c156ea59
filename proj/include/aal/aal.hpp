// aal — umbrella header.
// SPDX-License-Identifier: MIT
#pragma once

#include "aal/axioms.hpp"
#include "aal/error.hpp"
#include "aal/formula.hpp"
#include "aal/lang.hpp"
#include "aal/model.hpp"
#include "aal/parse.hpp"
#include "aal/proof.hpp"
#include "aal/semantics.hpp"
#include "aal/validity.hpp"
#include "aal/vocab.hpp"
#include "aal/word.hpp"
