package ifaces

// Notifier is implemented by both sinks below.
type Notifier interface {
	Notify(msg string)
}

type LogSink struct{}

func (l LogSink) Notify(msg string) {}

type NetSink struct{}

func (n NetSink) Notify(msg string) {}

func Fanout(n Notifier) {
	n.Notify("tick")
}
