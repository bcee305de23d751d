{
  "type": "free-complex",
  "ring": {"field": "Q", "variables": ["x", "y"], "laurent": false, "order": "grlex"},
  "ranks": [1, 2, 1],
  "differentials": [
    [["x", "y"]],
    [["-y"], ["x"]]
  ]
}
