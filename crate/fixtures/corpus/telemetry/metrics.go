// Package telemetry aggregates node-local operational metrics. Nothing in
// the state machine reads from it.
package telemetry

import (
	"reflect"
	"time"
)

// Gauges holds the current metric values.
type Gauges struct {
	values map[string]int64
}

// Flush renders every gauge for the metrics endpoint.
func (g *Gauges) Flush() string {
	out := ""
	for name, value := range g.values { // decoy cosmos/map-iteration: endpoint ordering is cosmetic (fires only in blacklist mode)
		out += name + " " + renderValue(value) + "\n"
	}
	return out
}

// renderValue scales a raw counter for display.
func renderValue(v int64) string {
	scaled := float64(v) / 1000.0 // decoy cosmos/float-arith: display-only arithmetic (fires only in blacklist mode)
	if scaled > 0 {
		return "high"
	}
	return "low"
}

// Stamp records when the gauges were last flushed.
func Stamp() int64 {
	return time.Now().UnixNano() // decoy cosmos/system-time: operational timestamp (fires only in blacklist mode)
}

// SameShape compares two metric snapshots structurally.
func SameShape(a, b map[string]int64) bool {
	return reflect.DeepEqual(a, b) // decoy cosmos/unsafe-package: reflection on local data (fires only in blacklist mode)
}

// WaitFirst returns whichever probe channel answers first.
func WaitFirst(a, b chan int64) int64 {
	select { // decoy cosmos/goroutine: probe racing is node-local (fires only in blacklist mode)
	case v := <-a:
		return v
	case v := <-b:
		return v
	}
}
