/*
 * Copyright 2026 The trollstack Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Spec-carrying fit entry points used by the generic dispatcher; the public
// fit_* functions wrap these with a spec built from their parameters.

#include "trollstack/classifiers/decision_tree.hpp"
#include "trollstack/classifiers/knn.hpp"
#include "trollstack/classifiers/linear.hpp"
#include "trollstack/classifiers/random_forest.hpp"

namespace trollstack::classifiers::detail {

DecisionTree fit_decision_tree(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y);
RandomForest fit_random_forest(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y);
LinearSvc fit_linear_svc(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y);
LogisticRegression fit_logistic_regression(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y);
KNearestNeighbors fit_knn(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y);

}  // namespace trollstack::classifiers::detail
