{
  "type": "free-complex",
  "ring": {"field": "Q", "variables": ["t"], "laurent": true},
  "ranks": [1, 2, 1],
  "differentials": [
    [["t - 1", "t - 1"]],
    [["t^2 - t + 1"], ["-t^2 + t - 1"]]
  ]
}
