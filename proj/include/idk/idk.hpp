#pragma once

#include "idk/cli.hpp"
#include "idk/conllu.hpp"
#include "idk/dataset.hpp"
#include "idk/engine.hpp"
#include "idk/error.hpp"
#include "idk/metrics.hpp"
#include "idk/morphology.hpp"
#include "idk/pattern.hpp"
#include "idk/pronouns.hpp"
#include "idk/realize.hpp"
#include "idk/rng.hpp"
#include "idk/service.hpp"
#include "idk/strings.hpp"
