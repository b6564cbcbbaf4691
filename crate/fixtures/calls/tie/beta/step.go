package beta

import "example.com/tie/target"

func Step() { target.Goal() }
