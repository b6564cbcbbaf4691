package tie

import (
	"example.com/tie/alpha"
	"example.com/tie/beta"
)

func Root() {
	beta.Step()
	alpha.Step()
}
