#pragma once

#include "wfeval/composition.hpp"
#include "wfeval/config.hpp"
#include "wfeval/error.hpp"
#include "wfeval/evaluate.hpp"
#include "wfeval/graph.hpp"
#include "wfeval/io.hpp"
#include "wfeval/penalty.hpp"
#include "wfeval/ranking.hpp"
#include "wfeval/report.hpp"
#include "wfeval/resources.hpp"
#include "wfeval/reward.hpp"
#include "wfeval/success.hpp"
#include "wfeval/validate.hpp"
