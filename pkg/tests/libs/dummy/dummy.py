from fo_games.game import parse_game, register_fixture


@register_fixture("dummy")
def dummy_game():
    return parse_game("state P/0; node n0 start; init !P; assert n0: !P;", name="dummy")
