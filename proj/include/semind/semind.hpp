#pragma once

#include "semind/candidates.hpp"
#include "semind/default_heuristics.hpp"
#include "semind/errors.hpp"
#include "semind/eval.hpp"
#include "semind/heuristics.hpp"
#include "semind/kernel.hpp"
#include "semind/parser.hpp"
#include "semind/pipeline.hpp"
#include "semind/prelude.hpp"
#include "semind/rules.hpp"
#include "semind/tactic.hpp"
#include "semind/term.hpp"
#include "semind/theory.hpp"
#include "semind/type.hpp"
#include "semind/typecheck.hpp"
#include "semind/version.hpp"
