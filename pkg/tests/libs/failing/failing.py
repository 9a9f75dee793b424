raise RuntimeError("something went wrong")
