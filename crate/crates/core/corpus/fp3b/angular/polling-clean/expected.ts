import { Component, OnDestroy, OnInit } from '@angular/core';
import { Api } from './api';

@Component({ selector: 'app-status', template: '{{ status }}' })
export class StatusComponent implements OnInit, OnDestroy {
  status = 'unknown';
  private poller?: ReturnType<typeof setInterval>;

  constructor(private api: Api) {}

  ngOnInit() {
    this.poller = setInterval(() => this.refresh(), 10000);
  }

  ngOnDestroy() {
    clearInterval(this.poller);
  }

  private refresh() {
    this.api.status().then(s => (this.status = s));
  }
}
