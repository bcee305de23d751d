{
  "type": "presented-complex",
  "ring": {"field": "Q", "variables": ["x"], "laurent": false, "order": "grlex"},
  "terms": [
    {"generators": 1, "relations": [["x"]]},
    {"generators": 1}
  ],
  "differentials": [[["1"]]]
}
