"""lojex: exact local algebra in k[[x,y]] (build in progress)."""
