"""Bundled word lists for the synthetic lake generator.

Everything the generator names (entities, teams, cities, columns)
comes from these closed pools so lakes are reproducible without any
download and still look plausibly human.
"""

from __future__ import annotations

INITIALS = tuple(f"{c}." for c in "ABCDEFGHIJKLMNOPQRSTUVWXYZ")

SURNAMES = (
    "Adams", "Allen", "Baker", "Barnes", "Bell", "Bennett", "Brooks", "Brown",
    "Bryant", "Butler", "Campbell", "Carter", "Castillo", "Chavez", "Chen",
    "Clark", "Cole", "Collins", "Cook", "Cooper", "Cox", "Cruz", "Curry",
    "Davis", "Diaz", "Dunn", "Edwards", "Evans", "Fisher", "Flores", "Ford",
    "Foster", "Fox", "Garcia", "Gibson", "Gomez", "Gonzalez", "Gordon",
    "Graham", "Grant", "Gray", "Green", "Griffin", "Hall", "Hamilton",
    "Harden", "Harper", "Harris", "Hayes", "Henderson", "Hernandez", "Hill",
    "Holmes", "Howard", "Hughes", "Hunt", "Ivanov", "Jackson", "James",
    "Jenkins", "Jimenez", "Johnson", "Jones", "Jordan", "Kelly", "Kim",
    "King", "Knight", "Kumar", "Lane", "Lee", "Lewis", "Long", "Lopez",
    "Marshall", "Martin", "Martinez", "Mason", "McDermott", "Mendoza",
    "Messi", "Miller", "Mitchell", "Moore", "Morales", "Morgan", "Murphy",
    "Murray", "Nelson", "Nguyen", "Ortiz", "Owens", "Parker", "Patel",
    "Perez", "Perry", "Peterson", "Phillips", "Porter", "Powell", "Price",
    "Ramirez", "Reed", "Reyes", "Reynolds", "Richardson", "Rivera",
    "Roberts", "Robinson", "Rogers", "Romero", "Ross", "Russell", "Sanchez",
    "Sanders", "Schmidt", "Scott", "Shaw", "Silva", "Simmons", "Singh",
    "Smith", "Stewart", "Stone", "Sullivan", "Taylor", "Thompson", "Torres",
    "Turner", "Vargas", "Wagner", "Walker", "Wallace", "Ward", "Watson",
    "Webb", "Wells", "West", "White", "Williams", "Wilson", "Wood", "Wright",
    "Young", "Zhang",
)

BASKETBALL_TEAMS = (
    "LAL", "BOS", "GSW", "HOU", "MIA", "CHI", "NYK", "PHX", "DAL", "DEN",
    "MIL", "TOR", "PHI", "UTA", "POR", "ATL", "MEM", "SAC", "ORL", "CLE",
)

FOOTBALL_TEAMS = (
    "FC Meridian", "Atletico Norte", "Real Costa", "United Park", "Dynamo Vale",
    "Sporting Rios", "Inter Lago", "Olympic Harbor", "Rovers Hill", "Albion West",
    "Victoria SC", "Northgate FC", "Crystal Bend", "Racing Delta", "Union Pico",
)

CITIES = (
    "Springfield", "Riverton", "Fairview", "Kingsport", "Maplewood", "Ashford",
    "Brookhaven", "Cedarville", "Dunmore", "Eastvale", "Foxboro", "Glenrock",
    "Harborview", "Ironton", "Jasper", "Kelton", "Lakewood", "Midvale",
    "Northfield", "Oakhurst", "Pinecrest", "Quarry Bay", "Redmond", "Seabrook",
    "Thornton", "Umberland", "Vernon", "Westlake", "Yardley", "Zephyr Cove",
    "Alton", "Briarwood", "Claremont", "Dexter", "Elkhart", "Freeport",
    "Granville", "Hollis", "Inverness", "Junction City",
)

DEPARTMENTS = (
    "ENG", "SALES", "OPS", "HR", "FIN", "LEGAL", "MKT", "IT", "R&D", "SUPPORT",
)

STATE_CODES = (
    "AL", "AZ", "CA", "CO", "FL", "GA", "IA", "ID", "IL", "KS", "KY", "MA",
    "MD", "MI", "MN", "MO", "NC", "NE", "NJ", "NM", "NV", "NY", "OH", "OR",
    "PA", "TX", "UT", "VA", "WA", "WI",
)

PRODUCT_ADJECTIVES = (
    "Compact", "Deluxe", "Eco", "Folding", "Heavy", "Junior", "Magnetic",
    "Portable", "Premium", "Rapid", "Smart", "Solar", "Steel", "Turbo", "Ultra",
)

PRODUCT_NOUNS = (
    "Blender", "Charger", "Drill", "Espresso Maker", "Fan", "Grinder",
    "Heater", "Kettle", "Lamp", "Mixer", "Pump", "Router", "Scale",
    "Speaker", "Toaster", "Vacuum",
)

BASKETBALL_POSITIONS = ("PG", "SG", "SF", "PF", "C", "F", "G")
FOOTBALL_POSITIONS = ("GK", "CB", "LB", "RB", "CM", "LW", "RW", "ST")
PRODUCT_CATEGORIES = ("kitchen", "workshop", "outdoor", "office", "audio")

# alternates the generator may rename a column to; each entry lists
# names for the same concept, any unused one is a legal new name
RENAME_SYNONYMS: dict[str, tuple[str, ...]] = {
    "team": ("club", "franchise", "squad"),
    "club": ("team", "franchise", "squad"),
    "pts": ("points", "points_per_game", "scoring"),
    "points": ("pts", "points_per_game", "scoring"),
    "rebounds": ("rebs", "boards"),
    "assists": ("asts", "dimes"),
    "games": ("games_played", "appearances"),
    "salary": ("compensation", "pay", "wage"),
    "rating": ("score", "grade", "overall"),
    "goals": ("goals_scored", "strikes"),
    "caps": ("international_caps", "appearances"),
    "market_value": ("valuation", "transfer_value"),
    "department": ("dept", "division", "unit"),
    "office": ("location", "site", "branch"),
    "tenure": ("years_of_service", "seniority"),
    "area": ("land_area", "surface"),
    "gdp": ("gross_product", "output"),
    "founded": ("established", "incorporated"),
    "price": ("list_price", "cost", "msrp"),
    "stock": ("inventory", "on_hand", "quantity"),
    "category": ("segment", "group", "class"),
    "weight_kg": ("mass_kg", "shipping_weight"),
    "temperature": ("temp_c", "air_temperature"),
    "humidity": ("relative_humidity", "rh"),
    "pressure": ("barometric_pressure", "air_pressure"),
    "height": ("height_cm", "stature"),
    "weight": ("weight_kg", "mass"),
    "position": ("role", "pos", "spot"),
}
