import { Component, OnDestroy, OnInit } from '@angular/core';
import { Api } from './api';

@Component({ selector: 'app-status', template: '{{ status }}' })
export class StatusComponent implements OnInit, OnDestroy {
  private intervalId?: ReturnType<typeof setInterval>;
  status = 'unknown';

  constructor(private api: Api) {}

  ngOnInit() {
    this.intervalId = setInterval(() => this.refresh(), 10000);
  }

  ngOnDestroy() {
    this.status = 'gone';
    clearInterval(this.intervalId);
  }

  private refresh() {
    this.api.status().then(s => (this.status = s));
  }
}
